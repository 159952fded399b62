/** DOM painting: one function from ViewModel to the page. */

import type { ViewModel } from "./viewmodel.js";

export interface Handlers {
  onRun(): void;
  onLocate(): void;
  onQuiz(): void;
  onPrints(): void;
  onPrintsRun(): void;
  onVisualizer(): void;
  onPseudocode(): void;
  onSolution(): void;
  onChoose(index: number): void;
  onSubmitAnswer(): void;
  onApply(proposalId: string): void;
  onApplyPrints(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function button(label: string, enabled: boolean, onClick: () => void): HTMLButtonElement {
  const node = el("button", enabled ? "btn" : "btn disabled", label);
  node.disabled = !enabled;
  node.addEventListener("click", onClick);
  return node;
}

export function render(root: HTMLElement, vm: ViewModel, handlers: Handlers): void {
  root.replaceChildren();

  const top = el("div", "toolbar");
  top.append(
    button("End-to-End Test", vm.runEnabled, handlers.onRun),
    el("span", `state state-${vm.stateLabel.toLowerCase()}`, vm.stateLabel),
  );
  root.append(top);

  if (vm.banner.kind) {
    root.append(el("div", `banner banner-${vm.banner.kind}`, vm.banner.text));
  }
  root.append(el("div", "summary", vm.summary));

  const helpers = el("div", "helpers");
  helpers.append(
    el("h3", undefined, "Helpers to Solve Bugs"),
    button("Locate Lines With Errors", vm.helpers.locate, handlers.onLocate),
    button("Provide Hint and Quiz", vm.helpers.quiz, handlers.onQuiz),
    button("Insert Print Statement", vm.helpers.prints, handlers.onPrints),
    button("Open Python Tutor", vm.helpers.visualizer, handlers.onVisualizer),
    button("Pseudo-code", vm.pseudocodeEnabled, handlers.onPseudocode),
    button("Provide Code Solution", vm.solutionEnabled, handlers.onSolution),
  );
  root.append(helpers);

  if (vm.failing.length) {
    const panel = el("div", "failing-panel");
    panel.append(el("h3", undefined, "Failing tests"));
    for (const row of vm.failing) {
      const item = el("div", `failing failing-${row.outcome}`);
      item.append(el("code", "test-id", row.testId), el("div", "detail", row.detail));
      panel.append(item);
    }
    root.append(panel);
  }

  if (vm.highlights.length) {
    const pane = el("div", "code-pane");
    pane.append(el("h3", undefined, "Suspicious lines"));
    for (const hit of vm.highlights) {
      const block = el("div", "highlight");
      block.append(
        el("div", "loc", `${hit.file}:${hit.line}  (score ${hit.score.toFixed(3)})`),
      );
      const pre = el("pre", "window");
      for (const line of hit.context.split("\n")) {
        const span = el("span", line.startsWith(">") ? "line hot" : "line", line + "\n");
        pre.append(span);
      }
      block.append(pre, el("p", "explanation", hit.explanation));
      pane.append(block);
    }
    root.append(pane);
  }

  if (vm.quiz) {
    const panel = el("div", "quiz");
    panel.append(el("h3", undefined, "Hint and Quiz"), el("p", undefined, vm.quiz.question));
    for (const option of vm.quiz.options) {
      const row = el("label", option.selected ? "option selected" : "option");
      const radio = el("input") as HTMLInputElement;
      radio.type = "radio";
      radio.name = "quiz";
      radio.checked = option.selected;
      radio.disabled = vm.quiz.locked;
      radio.addEventListener("change", () => handlers.onChoose(option.index));
      row.append(radio, el("code", undefined, option.label));
      if (vm.quiz.locked && vm.quiz.verdict) {
        row.append(
          button("Apply this fix", true, () => handlers.onApply(option.proposalId)),
        );
      }
      panel.append(row);
    }
    if (!vm.quiz.locked) {
      panel.append(button("Answer", vm.quiz.options.some((o) => o.selected), handlers.onSubmitAnswer));
    } else if (vm.quiz.verdict) {
      const verdict = vm.quiz.verdict;
      panel.append(
        el(
          "div",
          verdict.isCorrect ? "verdict correct" : "verdict incorrect",
          verdict.isCorrect ? "Correct!" : "Not quite.",
        ),
        el("p", "explanation", verdict.explanation),
      );
    }
    root.append(panel);
  }

  if (vm.prints) {
    const panel = el("div", "prints");
    panel.append(el("h3", undefined, "Print plan preview"));
    for (const reason of vm.prints.reasons) {
      panel.append(el("p", "reason", reason));
    }
    for (const file of vm.prints.files) {
      panel.append(el("div", "filename", file.file));
      const pre = el("pre", "preview");
      for (const line of file.lines) {
        pre.append(
          el("span", line.inserted ? "line inserted" : "line", line.text + "\n"),
        );
      }
      panel.append(pre);
    }
    panel.append(button("Run with prints", true, handlers.onPrintsRun));
    if (vm.prints.applyProposal) {
      panel.append(button("Paste into my code", true, handlers.onApplyPrints));
    }
    root.append(panel);
  }

  if (vm.debug) {
    const panel = el("div", "debug");
    panel.append(el("h3", undefined, "Debug output"));
    const byTest = new Map<string, string[]>();
    for (const line of vm.debug.lines) {
      const bucket = byTest.get(line.test_id) ?? [];
      bucket.push(line.text);
      byTest.set(line.test_id, bucket);
    }
    for (const [testId, lines] of byTest) {
      panel.append(el("div", "test-id", testId));
      const pre = el("pre", "debug-lines");
      pre.textContent = lines.join("\n");
      panel.append(pre);
    }
    root.append(panel);
  }

  if (vm.diff) {
    const panel = el("div", "diff");
    panel.append(el("h3", undefined, "Applied change"));
    const pre = el("pre", "diff-text");
    for (const line of vm.diff.split("\n")) {
      const cls =
        line.startsWith("+") && !line.startsWith("+++")
          ? "line added"
          : line.startsWith("-") && !line.startsWith("---")
            ? "line removed"
            : "line";
      pre.append(el("span", cls, line + "\n"));
    }
    panel.append(pre);
    root.append(panel);
  }
}
