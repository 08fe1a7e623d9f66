import { createApp } from "./app.js";

const root = document.getElementById("app");
const form = document.getElementById("loader") as HTMLFormElement;
const urlInput = document.getElementById("api-url") as HTMLInputElement;
const docInput = document.getElementById("game-doc") as HTMLTextAreaElement;

if (root && form) {
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const app = createApp(root, urlInput.value || "http://127.0.0.1:8000");
    void app.store.loadDocument(JSON.parse(docInput.value));
  });
}
