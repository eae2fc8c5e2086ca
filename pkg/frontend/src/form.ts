/**
 * DOM wiring for the metadata input form.
 *
 * Fully client side: the form state lives in memory, imports come from a
 * file picker, exports leave as file downloads. Validation messages render
 * in the same interaction that changed the field.
 */

import {
    BlockedExportError,
    FIELDS,
    FieldName,
    FormState,
    emptyForm,
    exportCodemetaJson,
    exportEnabled,
    exportInfoYaml,
    importInfo,
    invalidFields,
    setField,
} from "./crosswalk";

let state: FormState = emptyForm();

function fieldInput(name: FieldName): HTMLInputElement | HTMLTextAreaElement {
    return document.getElementById(`field-${name}`) as HTMLInputElement | HTMLTextAreaElement;
}

function renderField(name: FieldName): void {
    const field = state[name];
    const input = fieldInput(name);
    if (input.value !== field.value) {
        input.value = field.value;
    }
    const message = document.getElementById(`message-${name}`)!;
    message.textContent = field.message;
    input.classList.toggle("invalid", !field.valid);
}

function renderAll(): void {
    for (const spec of FIELDS) {
        renderField(spec.name);
    }
    const enabled = exportEnabled(state);
    (document.getElementById("export-yaml") as HTMLButtonElement).disabled = !enabled;
    (document.getElementById("export-codemeta") as HTMLButtonElement).disabled = !enabled;
    const summary = document.getElementById("export-blocked")!;
    summary.textContent = enabled
        ? ""
        : `Export disabled; fix: ${invalidFields(state).join(", ") || "title, version"}.`;
}

function notice(text: string, isError = false): void {
    const box = document.getElementById("notice")!;
    box.textContent = text;
    box.classList.toggle("error", isError);
}

function download(filename: string, text: string, mime: string): void {
    const blob = new Blob([text], { type: mime });
    const url = URL.createObjectURL(blob);
    const anchor = document.createElement("a");
    anchor.href = url;
    anchor.download = filename;
    anchor.click();
    URL.revokeObjectURL(url);
}

function onExportYaml(): void {
    try {
        download("info.yaml", exportInfoYaml(state), "application/yaml");
        notice("Exported info.yaml.");
    } catch (exc) {
        if (exc instanceof BlockedExportError) {
            notice(`Export blocked; invalid fields: ${exc.fields.join(", ")}.`, true);
        } else {
            throw exc;
        }
    }
}

function onExportCodemeta(): void {
    try {
        download("codemeta.json", exportCodemetaJson(state), "application/json");
        notice("Exported codemeta.json.");
    } catch (exc) {
        if (exc instanceof BlockedExportError) {
            notice(`Export blocked; invalid fields: ${exc.fields.join(", ")}.`, true);
        } else {
            throw exc;
        }
    }
}

async function onImport(event: Event): Promise<void> {
    const picker = event.target as HTMLInputElement;
    const file = picker.files?.[0];
    if (!file) {
        return;
    }
    const text = await file.text();
    const result = importInfo(text);
    if (result.state === null) {
        notice(result.error ?? "Import failed.", true);
        picker.value = "";
        return; // form untouched
    }
    state = result.state;
    renderAll();
    const parts: string[] = [`Imported ${result.recognized} field(s) from ${file.name}.`];
    if (result.recognized === 0) {
        parts.push("No recognized fields found.");
    }
    if (result.unmapped.length > 0) {
        parts.push(`Unmapped keys: ${result.unmapped.join(", ")}.`);
    }
    notice(parts.join(" "));
    picker.value = "";
}

function buildForm(): void {
    const container = document.getElementById("fields")!;
    for (const spec of FIELDS) {
        const row = document.createElement("div");
        row.className = "row";

        const label = document.createElement("label");
        label.htmlFor = `field-${spec.name}`;
        label.textContent = spec.required ? `${spec.label} *` : spec.label;
        row.appendChild(label);

        const input = spec.multiline
            ? document.createElement("textarea")
            : document.createElement("input");
        input.id = `field-${spec.name}`;
        input.placeholder = spec.placeholder;
        input.addEventListener("input", () => {
            state = setField(state, spec.name, input.value);
            renderAll();
        });
        row.appendChild(input);

        const message = document.createElement("div");
        message.className = "message";
        message.id = `message-${spec.name}`;
        row.appendChild(message);

        container.appendChild(row);
    }

    document.getElementById("export-yaml")!.addEventListener("click", onExportYaml);
    document.getElementById("export-codemeta")!.addEventListener("click", onExportCodemeta);
    document.getElementById("import-file")!.addEventListener("change", onImport);
    renderAll();
}

document.addEventListener("DOMContentLoaded", buildForm);
