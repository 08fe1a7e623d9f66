export async function waitFor(
  condition: () => boolean,
  timeoutMs = 20000,
): Promise<void> {
  const start = Date.now();
  while (!condition()) {
    if (Date.now() - start > timeoutMs) {
      throw new Error("timed out waiting for condition");
    }
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

export function text(root: HTMLElement, selector: string): string {
  const node = root.querySelector(selector);
  if (!node) throw new Error(`missing element ${selector}`);
  return node.textContent ?? "";
}

export function click(root: HTMLElement, selector: string): void {
  const node = root.querySelector(selector);
  if (!node) throw new Error(`missing element ${selector}`);
  node.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}
