/** Error panel rendered from the API's uniform error envelope. */

import type { ApiErrorBody } from "../types.js";

export function renderError(container: HTMLElement, body: ApiErrorBody): void {
  container.textContent = "";
  const panel = container.ownerDocument.createElement("div");
  panel.className = "error-panel";
  panel.dataset.errorCode = body.error;

  const heading = container.ownerDocument.createElement("strong");
  heading.textContent = body.error;
  panel.appendChild(heading);

  const message = container.ownerDocument.createElement("p");
  message.textContent = body.message;
  panel.appendChild(message);

  container.appendChild(panel);
}
