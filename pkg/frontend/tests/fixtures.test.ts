/**
 * Contract fixtures: the exports checked into fixtures/ are what the
 * toolchain-side acceptance test parses. Regenerate intentionally with
 *
 *     npm run fixtures
 */

import { existsSync, mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { emptyForm, exportCodemetaJson, exportInfoYaml, setField } from "../src/crosswalk";

const HERE = dirname(fileURLToPath(import.meta.url));
const FIXTURES = join(HERE, "..", "fixtures");
const YAML_PATH = join(FIXTURES, "fine_info_export.yaml");
const JSON_PATH = join(FIXTURES, "fine_info_export.codemeta.json");

function fixtureForm() {
    let state = emptyForm();
    state = setField(state, "title", "FINE - A Framework for Integrated Energy System Assessment");
    state = setField(state, "version", "2.2.2");
    state = setField(state, "firstRelease", "2018-11-12");
    state = setField(state, "programmingLanguage", "Python");
    return state;
}

describe("checked-in contract fixtures", () => {
    it("fixture exports exist and match the current form output", () => {
        const yamlText = exportInfoYaml(fixtureForm());
        const jsonText = exportCodemetaJson(fixtureForm());
        if (process.env.UPDATE_FIXTURES) {
            mkdirSync(FIXTURES, { recursive: true });
            writeFileSync(YAML_PATH, yamlText);
            writeFileSync(JSON_PATH, jsonText);
        }
        expect(existsSync(YAML_PATH)).toBe(true);
        expect(existsSync(JSON_PATH)).toBe(true);
        expect(readFileSync(YAML_PATH, "utf-8")).toBe(yamlText);
        expect(readFileSync(JSON_PATH, "utf-8")).toBe(jsonText);
    });
});
