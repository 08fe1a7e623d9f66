import { ApiClient } from "./api.js";
import { ConfirmFn, render } from "./render.js";
import { SessionStore } from "./state.js";

export interface App {
  store: SessionStore;
  api: ApiClient;
}

/**
 * Wire a session store to a root element: every state change re-renders.
 * The confirm function is injectable so tests can approve removals.
 */
export function createApp(
  root: HTMLElement,
  baseUrl: string,
  confirmFn: ConfirmFn = (msg) => window.confirm(msg),
): App {
  const api = new ApiClient(baseUrl);
  const store = new SessionStore(api);
  store.subscribe(() => render(root, store, confirmFn));
  render(root, store, confirmFn);
  return { store, api };
}
