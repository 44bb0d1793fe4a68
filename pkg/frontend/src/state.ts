/**
 * Editor state: DSL text as the single source of truth, with an undo
 * stack and selection. Pure reducer so it can be unit-tested without a
 * DOM; the shell in main.ts owns debouncing and requests.
 */

import type { VerdictResponse } from "./witness.js";

export interface EditorState {
  text: string;
  undo: string[];
  redo: string[];
  selection: string | null; // selected node name on the canvas
  verdict: VerdictResponse | null;
  /** condition whose witness is highlighted */
  focusedCondition: "C1" | "C2" | "C3" | null;
}

export const MAX_UNDO = 100;

export function initialState(text: string): EditorState {
  return {
    text,
    undo: [],
    redo: [],
    selection: null,
    verdict: null,
    focusedCondition: null,
  };
}

/** A structural edit: push the old text, clear redo, drop stale results. */
export function applyEdit(state: EditorState, text: string): EditorState {
  if (text === state.text) return state;
  return {
    ...state,
    text,
    undo: [...state.undo.slice(-(MAX_UNDO - 1)), state.text],
    redo: [],
    verdict: state.verdict, // kept until the next response lands
  };
}

export function undo(state: EditorState): EditorState {
  const prev = state.undo[state.undo.length - 1];
  if (prev === undefined) return state;
  return {
    ...state,
    text: prev,
    undo: state.undo.slice(0, -1),
    redo: [...state.redo, state.text],
  };
}

export function redo(state: EditorState): EditorState {
  const nxt = state.redo[state.redo.length - 1];
  if (nxt === undefined) return state;
  return {
    ...state,
    text: nxt,
    redo: state.redo.slice(0, -1),
    undo: [...state.undo, state.text],
  };
}

export function receiveVerdict(
  state: EditorState,
  forText: string,
  verdict: VerdictResponse,
): EditorState {
  // ignore responses for text the user has already replaced
  if (forText !== state.text) return state;
  return { ...state, verdict };
}

export function select(state: EditorState, name: string | null): EditorState {
  return { ...state, selection: name };
}

export function focusCondition(
  state: EditorState,
  condition: "C1" | "C2" | "C3" | null,
): EditorState {
  return {
    ...state,
    focusedCondition: state.focusedCondition === condition ? null : condition,
  };
}
