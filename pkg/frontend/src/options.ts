// Options page: the only setting is the detection endpoint URL.

declare const chrome: {
  storage: {
    sync: {
      get(
        defaults: Record<string, string>,
        cb: (items: Record<string, string>) => void
      ): void;
      set(items: Record<string, string>, cb?: () => void): void;
    };
  };
};

const DEFAULT_ENDPOINT = 'http://127.0.0.1:8000/detect';

const input = document.getElementById('endpoint') as HTMLInputElement;
const saveButton = document.getElementById('save') as HTMLButtonElement;
const statusEl = document.getElementById('status') as HTMLElement;

chrome.storage.sync.get({ endpoint: DEFAULT_ENDPOINT }, (items) => {
  input.value = items.endpoint;
});

saveButton.addEventListener('click', () => {
  chrome.storage.sync.set({ endpoint: input.value.trim() }, () => {
    statusEl.textContent = 'saved';
    setTimeout(() => (statusEl.textContent = ''), 1500);
  });
});
