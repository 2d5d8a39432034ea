/* tslint:disable */
/* eslint-disable */

/**
 * A zero matrix over `criteria_json` (a JSON array of names), for seeding the editor.
 */
export function empty_pom(criteria_json: string, kappa: number): string;

/**
 * `{"kappa", "criteria", "entries"}` in, weights and accordance out.
 */
export function evaluate_pom(pom_json: string): string;

/**
 * Clean, tokenize, stem and expand n-grams. `options_json` may be empty.
 */
export function preprocess(text: string, options_json: string): string;

/**
 * Ranks the models in `scores_csv`. With `with_efficiency`, the efficiency
 * column is derived from `timings_csv` (`model,seconds`).
 */
export function rank_models(pom_json: string, scores_csv: string, timings_csv: string, with_efficiency: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly empty_pom: (a: number, b: number, c: number) => [number, number, number, number];
    readonly evaluate_pom: (a: number, b: number) => [number, number, number, number];
    readonly preprocess: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly rank_models: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
