// Polling state machine: on every tick, send the description field to
// the detection endpoint iff its content changed since the last
// successful send and is non-empty.  At most one request is in flight;
// a tick that lands during one is skipped.  Network failures surface as
// a distinct server_unreachable state and the hash is left unset so the
// next tick retries the same content.

import {
  DetectResponse,
  INITIAL_STATE,
  PollState,
  contentHash,
} from './state.js';

export interface PollerOptions {
  endpoint: string;
  readField: () => string;
  onState: (state: PollState) => void;
  fetchFn?: typeof fetch;
}

export class Poller {
  private state: PollState = INITIAL_STATE;
  private inFlight = false;
  private readonly fetchFn: typeof fetch;

  constructor(private readonly options: PollerOptions) {
    this.fetchFn = options.fetchFn ?? fetch.bind(globalThis);
  }

  getState(): PollState {
    return this.state;
  }

  async tick(): Promise<void> {
    if (this.inFlight) return;
    const text = this.options.readField();
    if (text.trim() === '') {
      if (this.state.status !== 'idle') {
        this.setState({ status: 'idle' });
      }
      return;
    }
    const hash = contentHash(text);
    if (hash === this.state.lastSentHash) return;

    this.inFlight = true;
    try {
      const resp = await this.fetchFn(this.options.endpoint, {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify({ text }),
      });
      if (!resp.ok) throw new Error(`HTTP ${resp.status}`);
      const payload = (await resp.json()) as DetectResponse;
      this.setState({
        status: payload.breach ? 'breach' : 'clean',
        lastResponse: payload,
        lastSentHash: hash,
      });
    } catch {
      // Keep lastSentHash from the previous success so the next tick
      // retries; grey-but-distinct beats a stale green.
      this.setState({
        status: 'server_unreachable',
        lastResponse: this.state.lastResponse,
        lastSentHash: undefined,
      });
    } finally {
      this.inFlight = false;
    }
  }

  private setState(next: PollState): void {
    this.state = next;
    this.options.onState(next);
  }
}
