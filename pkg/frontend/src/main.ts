/** Bootstrap: attach to a session from the URL hash or create one. */

import { ApiClient } from "./api.js";
import { SessionController } from "./controller.js";
import { render } from "./render.js";

const api = new ApiClient("");

function sessionIdFromHash(): string | null {
  const match = window.location.hash.match(/#\/session\/([0-9a-f]+)/);
  return match ? match[1] : null;
}

function showAttachForm(root: HTMLElement): void {
  root.replaceChildren();
  const form = document.createElement("div");
  form.className = "attach";
  form.innerHTML = `
    <h2>codehinter</h2>
    <p>Attach to a project to start debugging.</p>
    <label>Project root <input id="root" placeholder="/path/to/project" size="40"></label>
    <button id="go">Start session</button>
    <p class="hint">The project needs a codehinter.json or top-level .py files.</p>
  `;
  root.append(form);
  const input = form.querySelector<HTMLInputElement>("#root")!;
  form.querySelector("#go")!.addEventListener("click", async () => {
    const created = await api.createSession({ root: input.value });
    window.location.hash = `#/session/${created.session_id}`;
    boot(root);
  });
}

function boot(root: HTMLElement): void {
  const sessionId = sessionIdFromHash();
  if (!sessionId) {
    showAttachForm(root);
    return;
  }
  const controller = new SessionController(api, sessionId);
  controller.onChange((vm) =>
    render(root, vm, {
      onRun: () => void controller.runE2E(),
      onLocate: () => void controller.locate(),
      onQuiz: () => void controller.requestQuiz(),
      onPrints: () => void controller.requestPrints(),
      onPrintsRun: () => void controller.runPrints(),
      onVisualizer: () => {
        void api.visualizerUrl(sessionId).then(({ url }) => window.open(url, "_blank"));
      },
      onPseudocode: () => {
        void api.pseudocode(sessionId).then(({ text }) => window.alert(text));
      },
      onSolution: () => {
        void controller.revealSolution().then((proposalId) => {
          if (proposalId && proposalId !== "no_op_reveal") {
            void controller.applyPatch(proposalId);
          }
        });
      },
      onChoose: (index) => controller.chooseOption(index),
      onSubmitAnswer: () => void controller.submitAnswer(),
      onApply: (proposalId) => void controller.applyPatch(proposalId),
      onApplyPrints: () => void controller.applyPrintsPlan(),
    }),
  );
  void controller.refresh();
  controller.startPolling();
}

window.addEventListener("hashchange", () => boot(document.getElementById("app")!));
boot(document.getElementById("app")!);
