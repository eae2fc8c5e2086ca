import { describe, expect, it } from "vitest";
import { parse as parseYaml } from "yaml";

import {
    BlockedExportError,
    emptyForm,
    exportCodemeta,
    exportCodemetaJson,
    exportEnabled,
    exportInfoYaml,
    formatAuthorLine,
    formToValues,
    importInfo,
    parseAuthorLine,
    setField,
    valuesToForm,
    FormState,
} from "../src/crosswalk";

// the YAML 1.2 emitter leaves dates unquoted (there is no timestamp type);
// the toolchain parser normalizes them back to ISO text either way
const FIXTURE_INFO_YAML = [
    "openapi: 3.0.0",
    "info:",
    "  title: FINE - A Framework for Integrated Energy System Assessment",
    "  version: 2.2.2",
    "  x-first-release: 2018-11-12",
    "  x-programming-lang: Python",
    "components: {}",
    "",
].join("\n");

function fixtureForm(): FormState {
    let state = emptyForm();
    state = setField(state, "title", "FINE - A Framework for Integrated Energy System Assessment");
    state = setField(state, "version", "2.2.2");
    state = setField(state, "firstRelease", "2018-11-12");
    state = setField(state, "programmingLanguage", "Python");
    return state;
}

describe("field validation", () => {
    it("starts with title and version flagged, export disabled", () => {
        const state = emptyForm();
        expect(state.title.valid).toBe(false);
        expect(state.version.valid).toBe(false);
        expect(state.title.message).toMatch(/required/i);
        expect(exportEnabled(state)).toBe(false);
    });

    it("reports a message in the same update that made a field invalid", () => {
        let state = fixtureForm();
        state = setField(state, "firstRelease", "12.11.2018");
        expect(state.firstRelease.valid).toBe(false);
        expect(state.firstRelease.message).toMatch(/ISO-8601/);
        state = setField(state, "firstRelease", "2018-11-12");
        expect(state.firstRelease.valid).toBe(true);
        expect(state.firstRelease.message).toBe("");
    });

    it("rejects impossible calendar dates and relative URLs", () => {
        let state = fixtureForm();
        state = setField(state, "firstRelease", "2018-13-40");
        expect(state.firstRelease.valid).toBe(false);
        state = setField(state, "repository", "not-a-url");
        expect(state.repository.valid).toBe(false);
        state = setField(state, "repository", "ftp://example.org/x");
        expect(state.repository.valid).toBe(false);
        state = setField(state, "repository", "https://example.org/x");
        expect(state.repository.valid).toBe(true);
    });
});

describe("author lines", () => {
    it("parses name, email and uri", () => {
        expect(parseAuthorLine("Ada Lovelace <ada@example.org> (https://orcid.org/0)")).toEqual({
            name: "Ada Lovelace",
            email: "ada@example.org",
            uri: "https://orcid.org/0",
        });
        expect(parseAuthorLine("Ada Lovelace")).toEqual({
            name: "Ada Lovelace",
            email: undefined,
            uri: undefined,
        });
        expect(parseAuthorLine("   ")).toBeNull();
    });

    it("round trips through formatting", () => {
        const person = { name: "Ada", email: "a@b.c", uri: "https://orcid.org/0" };
        expect(parseAuthorLine(formatAuthorLine(person))).toEqual(person);
    });
});

describe("export", () => {
    it("throws blocked-export with the offending fields", () => {
        const state = setField(emptyForm(), "firstRelease", "bad-date");
        expect(() => exportInfoYaml(state)).toThrowError(BlockedExportError);
        try {
            exportInfoYaml(state);
        } catch (exc) {
            expect((exc as BlockedExportError).fields).toContain("title");
            expect((exc as BlockedExportError).fields).toContain("firstRelease");
        }
    });

    it("exports the fixture info section byte-for-byte", () => {
        expect(exportInfoYaml(fixtureForm())).toBe(FIXTURE_INFO_YAML);
    });

    it("keeps date and numeric-looking strings as strings", () => {
        const parsed = parseYaml(exportInfoYaml(fixtureForm())) as Record<string, any>;
        expect(parsed.info["x-first-release"]).toBe("2018-11-12");
        expect(parsed.info.version).toBe("2.2.2");
        let state = fixtureForm();
        state = setField(state, "version", "1");
        const reparsed = parseYaml(exportInfoYaml(state)) as Record<string, any>;
        expect(reparsed.info.version).toBe("1");
    });

    it("writes a complete minimal exchange document", () => {
        const parsed = parseYaml(exportInfoYaml(fixtureForm())) as Record<string, any>;
        expect(parsed.openapi).toBe("3.0.0");
        expect(parsed.components).toEqual({});
    });

    it("maps every filled field to its CodeMeta term", () => {
        let state = fixtureForm();
        state = setField(state, "description", "Energy system assessment.");
        state = setField(state, "authors", "Ada <ada@example.org>\nGrace");
        state = setField(state, "license", "MIT");
        state = setField(state, "repository", "https://example.org/fine");
        state = setField(state, "keywords", "energy, optimization");
        state = setField(state, "referencePublication", "https://doi.org/10/x");
        const record = exportCodemeta(state);
        expect(record.name).toBe("FINE - A Framework for Integrated Energy System Assessment");
        expect(record.version).toBe("2.2.2");
        expect(record.dateCreated).toBe("2018-11-12");
        expect(record.programmingLanguage).toBe("Python");
        expect(record.author).toEqual([
            { "@type": "Person", name: "Ada", email: "ada@example.org" },
            { "@type": "Person", name: "Grace" },
        ]);
        expect(record.license).toBe("MIT");
        expect(record.codeRepository).toBe("https://example.org/fine");
        expect(record.keywords).toEqual(["energy", "optimization"]);
        expect(record.referencePublication).toBe("https://doi.org/10/x");
    });

    it("renders stable sorted JSON", () => {
        const text = exportCodemetaJson(fixtureForm());
        expect(text).toBe(exportCodemetaJson(fixtureForm()));
        const keys = Object.keys(JSON.parse(text));
        expect(keys).toEqual([...keys].sort());
        expect(text.endsWith("\n")).toBe(true);
    });
});

describe("import", () => {
    it("pre-fills all four fixture fields from the info document", () => {
        const result = importInfo(FIXTURE_INFO_YAML);
        expect(result.error).toBeUndefined();
        expect(result.state).not.toBeNull();
        const state = result.state!;
        expect(state.title.value).toBe(
            "FINE - A Framework for Integrated Energy System Assessment",
        );
        expect(state.version.value).toBe("2.2.2");
        expect(state.firstRelease.value).toBe("2018-11-12");
        expect(state.programmingLanguage.value).toBe("Python");
        expect(result.recognized).toBe(4);
        expect(result.unmapped).toEqual([]);
    });

    it("accepts a bare info section without the document wrapper", () => {
        const result = importInfo("title: t\nversion: '1'\n");
        expect(result.state!.title.value).toBe("t");
        expect(result.state!.version.value).toBe("1");
    });

    it("accepts a CodeMeta record and lists unmapped terms", () => {
        const record = {
            "@context": "https://doi.org/10.5063/schema/codemeta-2.0",
            name: "t",
            version: "1",
            issueTracker: "https://example.org/issues",
        };
        const result = importInfo(JSON.stringify(record));
        expect(result.state!.title.value).toBe("t");
        expect(result.unmapped).toEqual(["issueTracker"]);
    });

    it("leaves the form untouched on parse failure", () => {
        const result = importInfo("a: [unclosed");
        expect(result.state).toBeNull();
        expect(result.error).toBeTruthy();
    });

    it("handles an empty object with a zero-recognized notice", () => {
        const result = importInfo("{}");
        expect(result.state).not.toBeNull();
        expect(result.recognized).toBe(0);
        expect(result.unmapped).toEqual([]);
    });

    it("export then import restores the same form values", () => {
        let state = fixtureForm();
        state = setField(state, "authors", "Ada <ada@example.org> (https://orcid.org/0)\nGrace");
        state = setField(state, "keywords", "energy, optimization");
        state = setField(state, "license", "MIT");
        state = setField(state, "description", "Does things.");
        state = setField(state, "repository", "https://example.org/fine");
        state = setField(state, "referencePublication", "https://doi.org/10/x");

        const restoredYaml = importInfo(exportInfoYaml(state)).state!;
        expect(formToValues(restoredYaml)).toEqual(formToValues(state));

        const restoredJson = importInfo(exportCodemetaJson(state)).state!;
        expect(formToValues(restoredJson)).toEqual(formToValues(state));
    });

    it("valuesToForm inverts formToValues", () => {
        let state = fixtureForm();
        state = setField(state, "authors", "Ada <ada@example.org>");
        state = setField(state, "keywords", "a, b");
        const values = formToValues(state);
        expect(formToValues(valuesToForm(values))).toEqual(values);
    });
});
