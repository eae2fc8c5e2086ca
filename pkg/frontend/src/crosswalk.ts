/**
 * Form model for the general software metadata (info) section.
 *
 * One form field per CodeMeta crosswalk term. The module is pure logic:
 * field validation, export to the YAML exchange document and the CodeMeta
 * JSON record, and import of either format to pre-fill the form. The DOM
 * wiring lives in form.ts.
 */

import { parse as parseYaml, stringify as stringifyYaml } from "yaml";

export const CODEMETA_CONTEXT = "https://doi.org/10.5063/schema/codemeta-2.0";

export type FieldName =
    | "title"
    | "version"
    | "description"
    | "firstRelease"
    | "programmingLanguage"
    | "authors"
    | "license"
    | "repository"
    | "keywords"
    | "referencePublication";

export interface FieldSpec {
    name: FieldName;
    label: string;
    /** serialized key inside the info section */
    infoKey: string;
    /** CodeMeta term the field maps to */
    codemetaTerm: string;
    required: boolean;
    multiline: boolean;
    placeholder: string;
}

export const FIELDS: FieldSpec[] = [
    {
        name: "title",
        label: "Title",
        infoKey: "title",
        codemetaTerm: "name",
        required: true,
        multiline: false,
        placeholder: "Software name",
    },
    {
        name: "version",
        label: "Version",
        infoKey: "version",
        codemetaTerm: "version",
        required: true,
        multiline: false,
        placeholder: "2.2.2",
    },
    {
        name: "description",
        label: "Description",
        infoKey: "description",
        codemetaTerm: "description",
        required: false,
        multiline: true,
        placeholder: "What the software does",
    },
    {
        name: "firstRelease",
        label: "First release date",
        infoKey: "x-first-release",
        codemetaTerm: "dateCreated",
        required: false,
        multiline: false,
        placeholder: "2018-11-12",
    },
    {
        name: "programmingLanguage",
        label: "Programming language",
        infoKey: "x-programming-lang",
        codemetaTerm: "programmingLanguage",
        required: false,
        multiline: false,
        placeholder: "Python",
    },
    {
        name: "authors",
        label: "Authors (one per line)",
        infoKey: "contact",
        codemetaTerm: "author",
        required: false,
        multiline: true,
        placeholder: "Ada Lovelace <ada@example.org>",
    },
    {
        name: "license",
        label: "License",
        infoKey: "license",
        codemetaTerm: "license",
        required: false,
        multiline: false,
        placeholder: "MIT",
    },
    {
        name: "repository",
        label: "Repository URL",
        infoKey: "x-repository",
        codemetaTerm: "codeRepository",
        required: false,
        multiline: false,
        placeholder: "https://example.org/project",
    },
    {
        name: "keywords",
        label: "Keywords (comma separated)",
        infoKey: "x-keywords",
        codemetaTerm: "keywords",
        required: false,
        multiline: false,
        placeholder: "energy, optimization",
    },
    {
        name: "referencePublication",
        label: "Reference publication",
        infoKey: "x-reference-publication",
        codemetaTerm: "referencePublication",
        required: false,
        multiline: false,
        placeholder: "https://doi.org/10.1000/xyz",
    },
];

const FIELD_BY_NAME = new Map(FIELDS.map((f) => [f.name, f]));
const FIELD_BY_INFO_KEY = new Map(FIELDS.map((f) => [f.infoKey.toLowerCase(), f]));
const FIELD_BY_TERM = new Map(FIELDS.map((f) => [f.codemetaTerm, f]));

export interface FieldState {
    value: string;
    valid: boolean;
    message: string;
}

export type FormState = Record<FieldName, FieldState>;

const DATE_PATTERN = /^\d{4}-\d{2}-\d{2}$/;

/** Validate one field value; the message is empty when the value is fine. */
export function validateField(name: FieldName, value: string): { valid: boolean; message: string } {
    const spec = FIELD_BY_NAME.get(name);
    const trimmed = value.trim();
    if (spec?.required && trimmed === "") {
        return { valid: false, message: `${spec.label} is required.` };
    }
    if (name === "firstRelease" && trimmed !== "") {
        if (!DATE_PATTERN.test(trimmed) || Number.isNaN(Date.parse(trimmed))) {
            return { valid: false, message: "Use an ISO-8601 calendar date (YYYY-MM-DD)." };
        }
    }
    if (name === "repository" && trimmed !== "") {
        let parsed: URL | null = null;
        try {
            parsed = new URL(trimmed);
        } catch {
            parsed = null;
        }
        if (parsed === null || !(parsed.protocol === "http:" || parsed.protocol === "https:")) {
            return { valid: false, message: "Use an absolute http(s) URL." };
        }
    }
    return { valid: true, message: "" };
}

export function emptyForm(): FormState {
    const state = {} as FormState;
    for (const spec of FIELDS) {
        const check = validateField(spec.name, "");
        state[spec.name] = { value: "", valid: check.valid, message: check.message };
    }
    return state;
}

/** Pure state update: returns a new form with the field set and re-validated. */
export function setField(state: FormState, name: FieldName, value: string): FormState {
    const check = validateField(name, value);
    return { ...state, [name]: { value, valid: check.valid, message: check.message } };
}

export function invalidFields(state: FormState): FieldName[] {
    return FIELDS.filter((f) => !state[f.name].valid).map((f) => f.name);
}

/** Export is enabled iff every field is valid (title and version in particular). */
export function exportEnabled(state: FormState): boolean {
    return invalidFields(state).length === 0 && state.title.value.trim() !== "" && state.version.value.trim() !== "";
}

export interface PersonEntry {
    name: string;
    email?: string;
    uri?: string;
}

/** `Ada Lovelace <ada@example.org> (https://orcid.org/0)` -> structured entry. */
export function parseAuthorLine(line: string): PersonEntry | null {
    let rest = line.trim();
    if (rest === "") {
        return null;
    }
    let email: string | undefined;
    let uri: string | undefined;
    const uriMatch = rest.match(/\(([^()]*)\)\s*$/);
    if (uriMatch) {
        uri = uriMatch[1].trim() || undefined;
        rest = rest.slice(0, uriMatch.index).trim();
    }
    const emailMatch = rest.match(/<([^<>]*)>\s*$/);
    if (emailMatch) {
        email = emailMatch[1].trim() || undefined;
        rest = rest.slice(0, emailMatch.index).trim();
    }
    if (rest === "") {
        return null;
    }
    return { name: rest, email, uri };
}

export function formatAuthorLine(person: PersonEntry): string {
    let line = person.name;
    if (person.email) {
        line += ` <${person.email}>`;
    }
    if (person.uri) {
        line += ` (${person.uri})`;
    }
    return line;
}

/** Structured values behind a valid form. */
export interface InfoValues {
    title: string;
    version: string;
    description?: string;
    firstRelease?: string;
    programmingLanguage?: string;
    authors: PersonEntry[];
    license?: string;
    repository?: string;
    keywords: string[];
    referencePublication?: string;
}

function optional(state: FormState, name: FieldName): string | undefined {
    const trimmed = state[name].value.trim();
    return trimmed === "" ? undefined : trimmed;
}

export function formToValues(state: FormState): InfoValues {
    const authors = state.authors.value
        .split("\n")
        .map(parseAuthorLine)
        .filter((p): p is PersonEntry => p !== null);
    const keywords = state.keywords.value
        .split(",")
        .map((k) => k.trim())
        .filter((k) => k !== "");
    return {
        title: state.title.value.trim(),
        version: state.version.value.trim(),
        description: optional(state, "description"),
        firstRelease: optional(state, "firstRelease"),
        programmingLanguage: optional(state, "programmingLanguage"),
        authors,
        license: optional(state, "license"),
        repository: optional(state, "repository"),
        keywords,
        referencePublication: optional(state, "referencePublication"),
    };
}

export function valuesToForm(values: InfoValues): FormState {
    let state = emptyForm();
    state = setField(state, "title", values.title);
    state = setField(state, "version", values.version);
    if (values.description) state = setField(state, "description", values.description);
    if (values.firstRelease) state = setField(state, "firstRelease", values.firstRelease);
    if (values.programmingLanguage) {
        state = setField(state, "programmingLanguage", values.programmingLanguage);
    }
    if (values.authors.length > 0) {
        state = setField(state, "authors", values.authors.map(formatAuthorLine).join("\n"));
    }
    if (values.license) state = setField(state, "license", values.license);
    if (values.repository) state = setField(state, "repository", values.repository);
    if (values.keywords.length > 0) state = setField(state, "keywords", values.keywords.join(", "));
    if (values.referencePublication) {
        state = setField(state, "referencePublication", values.referencePublication);
    }
    return state;
}

export class BlockedExportError extends Error {
    readonly fields: FieldName[];

    constructor(fields: FieldName[]) {
        super(`blocked-export: invalid fields ${fields.join(", ") || "title, version"}`);
        this.fields = fields;
    }
}

function requireExportable(state: FormState): InfoValues {
    if (!exportEnabled(state)) {
        const blocking = invalidFields(state);
        if (state.title.value.trim() === "" && !blocking.includes("title")) blocking.push("title");
        if (state.version.value.trim() === "" && !blocking.includes("version")) blocking.push("version");
        throw new BlockedExportError(blocking);
    }
    return formToValues(state);
}

function personToContact(person: PersonEntry): Record<string, string> {
    const contact: Record<string, string> = { name: person.name };
    if (person.email) contact.email = person.email;
    if (person.uri) contact.url = person.uri;
    return contact;
}

/**
 * The exported YAML is a complete minimal exchange document (openapi +
 * info + empty components), so the file stands alone and the toolchain
 * parser accepts it directly.
 */
export function exportInfoYaml(state: FormState): string {
    const values = requireExportable(state);
    const info: Record<string, unknown> = {
        title: values.title,
        version: values.version,
    };
    if (values.description !== undefined) info.description = values.description;
    if (values.authors.length === 1) {
        info.contact = personToContact(values.authors[0]);
    } else if (values.authors.length > 1) {
        info.contact = values.authors.map(personToContact);
    }
    if (values.license !== undefined) info.license = { name: values.license };
    if (values.firstRelease !== undefined) info["x-first-release"] = values.firstRelease;
    if (values.programmingLanguage !== undefined) {
        info["x-programming-lang"] = values.programmingLanguage;
    }
    if (values.repository !== undefined) info["x-repository"] = values.repository;
    if (values.keywords.length > 0) info["x-keywords"] = values.keywords;
    if (values.referencePublication !== undefined) {
        info["x-reference-publication"] = values.referencePublication;
    }
    return stringifyYaml({ openapi: "3.0.0", info, components: {} }, { indent: 2 });
}

export function exportCodemeta(state: FormState): Record<string, unknown> {
    const values = requireExportable(state);
    const record: Record<string, unknown> = {
        "@context": CODEMETA_CONTEXT,
        "@type": "SoftwareSourceCode",
        name: values.title,
        version: values.version,
    };
    if (values.description !== undefined) record.description = values.description;
    if (values.firstRelease !== undefined) record.dateCreated = values.firstRelease;
    if (values.programmingLanguage !== undefined) {
        record.programmingLanguage = values.programmingLanguage;
    }
    if (values.authors.length > 0) {
        record.author = values.authors.map((person) => {
            const entry: Record<string, string> = { "@type": "Person", name: person.name };
            if (person.email) entry.email = person.email;
            if (person.uri) entry["@id"] = person.uri;
            return entry;
        });
    }
    if (values.license !== undefined) record.license = values.license;
    if (values.repository !== undefined) record.codeRepository = values.repository;
    if (values.keywords.length > 0) record.keywords = values.keywords;
    if (values.referencePublication !== undefined) {
        record.referencePublication = values.referencePublication;
    }
    return record;
}

/** Stable JSON rendering: sorted keys, two-space indent, trailing newline. */
export function exportCodemetaJson(state: FormState): string {
    const record = exportCodemeta(state);
    const sorted = Object.fromEntries(
        Object.entries(record).sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0)),
    );
    return `${JSON.stringify(sorted, null, 2)}\n`;
}

export interface ImportResult {
    state: FormState | null;
    /** keys of the input that map to no form field */
    unmapped: string[];
    /** how many recognized fields were filled */
    recognized: number;
    error?: string;
}

function asText(value: unknown): string {
    if (typeof value === "string") return value;
    if (typeof value === "number" || typeof value === "boolean") return String(value);
    return "";
}

function personFromImport(entry: unknown): PersonEntry | null {
    if (typeof entry === "string") {
        return entry.trim() === "" ? null : { name: entry.trim() };
    }
    if (entry !== null && typeof entry === "object") {
        const record = entry as Record<string, unknown>;
        const name = asText(record.name);
        if (name === "") return null;
        return {
            name,
            email: asText(record.email) || undefined,
            uri: asText(record.url ?? record.uri ?? record["@id"]) || undefined,
        };
    }
    return null;
}

function importAuthors(value: unknown): PersonEntry[] {
    const entries = Array.isArray(value) ? value : [value];
    return entries.map(personFromImport).filter((p): p is PersonEntry => p !== null);
}

function importKeywords(value: unknown): string[] {
    if (Array.isArray(value)) return value.map(asText).filter((k) => k !== "");
    const single = asText(value);
    return single === "" ? [] : [single];
}

function importLicense(value: unknown): string | undefined {
    if (value !== null && typeof value === "object" && !Array.isArray(value)) {
        const record = value as Record<string, unknown>;
        return asText(record.name) || asText(record.url) || undefined;
    }
    return asText(value) || undefined;
}

/**
 * Pre-fill the form from YAML (an exchange document or a bare info
 * section) or from a CodeMeta JSON record. On a parse failure the form is
 * left untouched (`state` is null and `error` set).
 */
export function importInfo(text: string): ImportResult {
    let parsed: unknown;
    try {
        parsed = parseYaml(text);
    } catch (exc) {
        return { state: null, unmapped: [], recognized: 0, error: `Cannot parse input: ${exc}` };
    }
    if (parsed === null || typeof parsed !== "object" || Array.isArray(parsed)) {
        return { state: null, unmapped: [], recognized: 0, error: "Input is not a mapping." };
    }
    let record = parsed as Record<string, unknown>;
    let isCodemeta = false;
    const keysLower = new Set(Object.keys(record).map((k) => k.toLowerCase()));
    if (keysLower.has("info") && typeof record.info === "object" && record.info !== null) {
        record = record.info as Record<string, unknown>;
    } else if (!keysLower.has("title") && (keysLower.has("@context") || keysLower.has("name"))) {
        isCodemeta = true;
    }

    let state = emptyForm();
    const unmapped: string[] = [];
    let recognized = 0;
    const consumed = new Set(isCodemeta ? ["@context", "@type"] : ["openapi", "components", "paths", "servers"]);

    for (const [key, value] of Object.entries(record)) {
        if (consumed.has(key.toLowerCase()) || value === null || value === undefined) {
            continue;
        }
        const spec = isCodemeta
            ? FIELD_BY_TERM.get(key)
            : FIELD_BY_INFO_KEY.get(key.toLowerCase());
        if (spec === undefined) {
            unmapped.push(key);
            continue;
        }
        recognized += 1;
        if (spec.name === "authors") {
            const authors = importAuthors(value);
            if (authors.length > 0) {
                state = setField(state, "authors", authors.map(formatAuthorLine).join("\n"));
            }
        } else if (spec.name === "keywords") {
            const keywords = importKeywords(value);
            if (keywords.length > 0) {
                state = setField(state, "keywords", keywords.join(", "));
            }
        } else if (spec.name === "license") {
            const license = importLicense(value);
            if (license !== undefined) {
                state = setField(state, "license", license);
            }
        } else {
            state = setField(state, spec.name, asText(value));
        }
    }
    return { state, unmapped, recognized };
}
