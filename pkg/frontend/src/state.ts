// Poll-state model shared by the poller and the badge renderer.
// Rendering is derived purely from PollState so it can be tested
// without a DOM.

export type PollStatus = 'idle' | 'clean' | 'breach' | 'server_unreachable';

export interface Candidate {
  start: number;
  end: number;
  matched: string;
  pattern: string;
  score: number;
}

export interface DetectResponse {
  breach: boolean;
  candidates: Candidate[];
  cleaned_text_length: number;
}

export interface PollState {
  status: PollStatus;
  lastResponse?: DetectResponse;
  lastSentHash?: string;
}

export const INITIAL_STATE: PollState = { status: 'idle' };

export type BadgeColor = 'grey' | 'green' | 'red';

export interface BadgeModel {
  color: BadgeColor;
  label: string;
  // Candidate snippets shown in the tooltip panel; empty unless breach.
  panelRows: string[];
}

const LABELS: Record<PollStatus, string> = {
  idle: 'idle',
  clean: 'no secrets detected',
  breach: 'possible secret leak',
  server_unreachable: 'scanner unreachable',
};

export function badgeColor(status: PollStatus): BadgeColor {
  if (status === 'clean') return 'green';
  if (status === 'breach') return 'red';
  // Unreachable must not look like clean; it shares the neutral grey
  // with idle but keeps its own label.
  return 'grey';
}

export function renderModel(state: PollState): BadgeModel {
  const rows =
    state.status === 'breach' && state.lastResponse
      ? state.lastResponse.candidates.map(
          (c) => `${c.pattern}: ${truncate(c.matched)} (${c.score.toFixed(2)})`
        )
      : [];
  return {
    color: badgeColor(state.status),
    label: LABELS[state.status],
    panelRows: rows,
  };
}

function truncate(value: string, max = 24): string {
  return value.length > max ? `${value.slice(0, max)}…` : value;
}

// FNV-1a; collisions only cost a redundant request, so 32 bits is plenty.
export function contentHash(text: string): string {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return (hash >>> 0).toString(16);
}
