/** UI contract: the three session states enable exactly the documented
 * controls, and the prints preview highlights exactly the plan's insertions. */

import { describe, expect, it } from "vitest";

import { computeView, initialUiState, printsView } from "../src/viewmodel.js";
import { failedSession, passedSession, printPlan, syntaxSession } from "./fixtures.js";

describe("render_session control enablement", () => {
  it("TESTS_FAILED enables the run button and all four helpers", () => {
    const vm = computeView(failedSession(), initialUiState());
    expect(vm.runEnabled).toBe(true);
    expect(vm.helpers).toEqual({ locate: true, quiz: true, prints: true, visualizer: true });
    expect(vm.solutionEnabled).toBe(true);
    expect(vm.failing).toHaveLength(3);
    expect(vm.failing[0].detail).toBe("expected 0, got -1");
    expect(vm.banner.kind).toBeNull();
  });

  it("TESTS_PASSED disables helpers and shows the success banner", () => {
    const vm = computeView(passedSession(), initialUiState());
    expect(vm.runEnabled).toBe(true);
    expect(vm.helpers).toEqual({
      locate: false,
      quiz: false,
      prints: false,
      visualizer: false,
    });
    expect(vm.solutionEnabled).toBe(false);
    expect(vm.banner.kind).toBe("success");
    expect(vm.failing).toHaveLength(0);
  });

  it("SYNTAX_ERROR enables only the quiz helper", () => {
    const vm = computeView(syntaxSession(), initialUiState());
    expect(vm.helpers).toEqual({
      locate: false,
      quiz: true,
      prints: false,
      visualizer: false,
    });
    expect(vm.solutionEnabled).toBe(false);
    expect(vm.banner.kind).toBe("syntax");
    expect(vm.banner.text).toContain("main.py:1");
  });

  it("no mutation is offered while one is in flight", () => {
    const ui = initialUiState();
    ui.busy = true;
    const vm = computeView(failedSession(), ui);
    expect(vm.runEnabled).toBe(false);
    expect(vm.helpers).toEqual({
      locate: false,
      quiz: false,
      prints: false,
      visualizer: false,
    });
  });

  it("connection loss shows the retry banner without touching state", () => {
    const ui = initialUiState();
    ui.offline = true;
    const vm = computeView(failedSession(), ui);
    expect(vm.banner.kind).toBe("offline");
    expect(vm.stateLabel).toBe("TESTS_FAILED");
  });
});

describe("prints preview", () => {
  it("highlights exactly the plan's inserted lines", () => {
    const view = printsView(printPlan());
    expect(view).not.toBeNull();
    const lines = view!.files[0].lines;
    const highlighted = lines.filter((l) => l.inserted).map((l) => l.number);
    expect(highlighted).toEqual([5, 10]);
    for (const line of lines.filter((l) => l.inserted)) {
      expect(line.text).toContain("[ch-print:");
    }
    const untouched = lines.filter((l) => !l.inserted);
    for (const line of untouched) {
      expect(line.text).not.toContain("[ch-print:");
    }
  });

  it("a three-insertion plan previews three green lines", () => {
    const plan = printPlan();
    plan.insertions.push({
      marker: 3,
      file: "main.py",
      line_after: 12,
      variable: "hi",
      reason: "upper bound",
    });
    plan.rendered["main.py"].inserted_lines = [5, 10, 13];
    const view = printsView(plan);
    expect(view!.files[0].lines.filter((l) => l.inserted)).toHaveLength(3);
  });
});
