import { describe, expect, it } from 'vitest';

import { Poller } from '../src/poller.js';
import {
  DetectResponse,
  PollState,
  badgeColor,
  contentHash,
  renderModel,
} from '../src/state.js';

function detectResponse(breach: boolean, matched: string[] = []): DetectResponse {
  return {
    breach,
    candidates: matched.map((m, i) => ({
      start: i * 10,
      end: i * 10 + m.length,
      matched: m,
      pattern: 'generic_password',
      score: 0.91,
    })),
    cleaned_text_length: 100,
  };
}

interface Harness {
  poller: Poller;
  states: PollState[];
  requests: string[];
  setField: (text: string) => void;
  setResponse: (r: DetectResponse | 'unreachable') => void;
}

function harness(): Harness {
  let field = '';
  let response: DetectResponse | 'unreachable' = detectResponse(false);
  const states: PollState[] = [];
  const requests: string[] = [];

  const fetchFn = (async (_url: unknown, init?: RequestInit) => {
    const body = JSON.parse(String(init?.body)) as { text: string };
    requests.push(body.text);
    if (response === 'unreachable') throw new TypeError('failed to fetch');
    return {
      ok: true,
      status: 200,
      json: async () => response,
    } as Response;
  }) as typeof fetch;

  const poller = new Poller({
    endpoint: 'http://127.0.0.1:9/detect',
    readField: () => field,
    onState: (s) => states.push(s),
    fetchFn,
  });
  return {
    poller,
    states,
    requests,
    setField: (text) => (field = text),
    setResponse: (r) => (response = r),
  };
}

describe('poller state machine', () => {
  it('starts idle with a grey badge', () => {
    const h = harness();
    expect(h.poller.getState().status).toBe('idle');
    expect(badgeColor(h.poller.getState().status)).toBe('grey');
  });

  it('sends nothing while the field is empty', async () => {
    const h = harness();
    for (let i = 0; i < 5; i++) await h.poller.tick();
    expect(h.requests).toHaveLength(0);
    expect(h.poller.getState().status).toBe('idle');
  });

  it('treats whitespace-only content as empty', async () => {
    const h = harness();
    h.setField('   \n\t ');
    await h.poller.tick();
    expect(h.requests).toHaveLength(0);
  });

  it('transitions grey -> green -> red within one tick of each change', async () => {
    const h = harness();
    expect(badgeColor(h.poller.getState().status)).toBe('grey');

    h.setField('fixing the login page');
    h.setResponse(detectResponse(false));
    await h.poller.tick();
    expect(h.poller.getState().status).toBe('clean');
    expect(badgeColor(h.poller.getState().status)).toBe('green');

    h.setField('fixing the login page, password=hunter2hunter2');
    h.setResponse(detectResponse(true, ['hunter2hunter2']));
    await h.poller.tick();
    expect(h.poller.getState().status).toBe('breach');
    expect(badgeColor(h.poller.getState().status)).toBe('red');
  });

  it('sends nothing while the content is unchanged', async () => {
    const h = harness();
    h.setField('same draft text');
    for (let i = 0; i < 6; i++) await h.poller.tick();
    expect(h.requests).toHaveLength(1);
  });

  it('re-sends after an edit, including reverting to earlier content', async () => {
    const h = harness();
    h.setField('draft one');
    await h.poller.tick();
    h.setField('draft two');
    await h.poller.tick();
    h.setField('draft one');
    await h.poller.tick();
    expect(h.requests).toEqual(['draft one', 'draft two', 'draft one']);
  });

  it('renders the distinct unreachable state and recovers', async () => {
    const h = harness();
    h.setField('some draft');
    h.setResponse('unreachable');
    await h.poller.tick();
    expect(h.poller.getState().status).toBe('server_unreachable');
    expect(badgeColor(h.poller.getState().status)).toBe('grey');
    expect(renderModel(h.poller.getState()).label).not.toBe('idle');

    // Same content retries once the server is back.
    h.setResponse(detectResponse(false));
    await h.poller.tick();
    expect(h.poller.getState().status).toBe('clean');
    expect(h.requests).toHaveLength(2);
  });

  it('treats a non-2xx response as unreachable', async () => {
    const h = harness();
    const fetchFn = (async () =>
      ({ ok: false, status: 500, json: async () => ({}) }) as Response) as typeof fetch;
    const states: PollState[] = [];
    const poller = new Poller({
      endpoint: 'http://x/detect',
      readField: () => 'text',
      onState: (s) => states.push(s),
      fetchFn,
    });
    await poller.tick();
    expect(poller.getState().status).toBe('server_unreachable');
  });

  it('skips ticks while a request is in flight', async () => {
    let resolveFetch!: (r: Response) => void;
    const requests: string[] = [];
    const fetchFn = ((_url: unknown, init?: RequestInit) => {
      requests.push(String(init?.body));
      return new Promise<Response>((resolve) => (resolveFetch = resolve));
    }) as typeof fetch;
    const poller = new Poller({
      endpoint: 'http://x/detect',
      readField: () => 'draft',
      onState: () => {},
      fetchFn,
    });
    const first = poller.tick();
    await poller.tick(); // lands mid-flight, must be skipped
    await poller.tick();
    expect(requests).toHaveLength(1);
    resolveFetch({
      ok: true,
      status: 200,
      json: async () => detectResponse(false),
    } as Response);
    await first;
    expect(poller.getState().status).toBe('clean');
  });
});

describe('badge rendering model', () => {
  it('maps every status to its color', () => {
    expect(badgeColor('idle')).toBe('grey');
    expect(badgeColor('clean')).toBe('green');
    expect(badgeColor('breach')).toBe('red');
    expect(badgeColor('server_unreachable')).toBe('grey');
  });

  it('lists one snippet row per candidate on breach', () => {
    const model = renderModel({
      status: 'breach',
      lastResponse: detectResponse(true, ['AKIA0123456789ABCDEF', 'ghp_abc']),
    });
    expect(model.color).toBe('red');
    expect(model.panelRows).toHaveLength(2);
    expect(model.panelRows[0]).toContain('AKIA0123456789ABCDEF');
  });

  it('shows no panel rows outside breach', () => {
    expect(renderModel({ status: 'idle' }).panelRows).toEqual([]);
    expect(
      renderModel({ status: 'clean', lastResponse: detectResponse(false) })
        .panelRows
    ).toEqual([]);
  });
});

describe('content hash', () => {
  it('is stable and distinguishes different drafts', () => {
    expect(contentHash('abc')).toBe(contentHash('abc'));
    expect(contentHash('abc')).not.toBe(contentHash('abd'));
    expect(contentHash('')).not.toBe(contentHash(' '));
  });
});
