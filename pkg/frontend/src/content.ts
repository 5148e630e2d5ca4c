// Content script: find the issue-description field, inject the badge,
// and drive the poller on a fixed interval.

import { Poller } from './poller.js';
import { PollState, renderModel } from './state.js';

declare const chrome: {
  storage?: {
    sync: {
      get(
        defaults: Record<string, string>,
        cb: (items: Record<string, string>) => void
      ): void;
    };
  };
};

const POLL_INTERVAL_MS = 2000;
const DEFAULT_ENDPOINT = 'http://127.0.0.1:8000/detect';
const FIELD_SELECTORS = [
  'textarea#issue_body',
  'textarea[name="issue[body]"]',
  'textarea[aria-label="Description"]',
];

const COLOR_CSS: Record<string, string> = {
  grey: '#9ca3af',
  green: '#22c55e',
  red: '#ef4444',
};

function findField(): HTMLTextAreaElement | null {
  for (const selector of FIELD_SELECTORS) {
    const el = document.querySelector<HTMLTextAreaElement>(selector);
    if (el) return el;
  }
  return null;
}

function injectBadge(field: HTMLTextAreaElement): HTMLElement {
  const badge = document.createElement('div');
  badge.id = 'issuescan-badge';
  badge.style.cssText =
    'display:inline-flex;align-items:center;gap:6px;margin:4px 0;' +
    'font:12px sans-serif;color:#374151;';
  const dot = document.createElement('span');
  dot.className = 'issuescan-dot';
  dot.style.cssText =
    'width:10px;height:10px;border-radius:50%;display:inline-block;';
  const label = document.createElement('span');
  label.className = 'issuescan-label';
  const panel = document.createElement('ul');
  panel.className = 'issuescan-panel';
  panel.style.cssText = 'margin:2px 0 0 16px;padding:0;list-style:disc;';
  badge.append(dot, label, panel);
  field.insertAdjacentElement('afterend', badge);
  return badge;
}

function render(badge: HTMLElement, state: PollState): void {
  const model = renderModel(state);
  const dot = badge.querySelector<HTMLElement>('.issuescan-dot')!;
  const label = badge.querySelector<HTMLElement>('.issuescan-label')!;
  const panel = badge.querySelector<HTMLElement>('.issuescan-panel')!;
  dot.style.backgroundColor = COLOR_CSS[model.color];
  label.textContent = model.label;
  panel.replaceChildren(
    ...model.panelRows.map((row) => {
      const li = document.createElement('li');
      li.textContent = row;
      return li;
    })
  );
}

function endpointFromOptions(cb: (endpoint: string) => void): void {
  if (typeof chrome !== 'undefined' && chrome.storage) {
    chrome.storage.sync.get({ endpoint: DEFAULT_ENDPOINT }, (items) =>
      cb(items.endpoint)
    );
  } else {
    cb(DEFAULT_ENDPOINT);
  }
}

function start(): void {
  const field = findField();
  if (!field) return;
  const badge = injectBadge(field);
  endpointFromOptions((endpoint) => {
    const poller = new Poller({
      endpoint,
      readField: () => field.value,
      onState: (state) => render(badge, state),
    });
    render(badge, poller.getState());
    setInterval(() => void poller.tick(), POLL_INTERVAL_MS);
  });
}

start();
