"""Toolchain for machine-actionable software interface metadata.

The package covers the full metadata life cycle: an in-memory schema model
(`datadesc.model`), the OpenAPI-conformant YAML exchange format
(`datadesc.exchange`), a CodeMeta crosswalk (`datadesc.codemeta`),
extraction from annotated source files (`datadesc.extract`), document
merging (`datadesc.merge`), validation of concrete data values
(`datadesc.validation`), compatibility checking (`datadesc.compat`) and
publication exports (`datadesc.export`).
"""

from .checks import check_document
from .codemeta import (
    CODEMETA_CONTEXT,
    CROSSWALK,
    CodeMetaRecord,
    MissingNameError,
    codemeta_json,
    codemeta_to_info,
    info_to_codemeta,
)
from .compat import CompatibilityReport, check_compatibility
from .exchange import (
    attribute_table,
    document_from_raw,
    document_to_raw,
    emit_document,
    parse_document,
)
from .export import (
    build_registry_payload,
    export_codemeta,
    render_docs,
    write_fileset,
)
from .extract import (
    AnnotatedInterfaceTree,
    SourceUnit,
    extract_from_paths,
    extract_interface,
    map_type_hint,
    parse_source,
)
from .merge import MergePolicy, MergeReport, merge
from .model import (
    ARRAY,
    BOOLEAN,
    FILE,
    INTEGER,
    NUMBER,
    OBJECT,
    STRING,
    ClassDescription,
    DataDescDocument,
    DataDescError,
    DataType,
    Diagnostic,
    DimensionDescription,
    DuplicateClassError,
    FunctionDescription,
    InvalidDocumentError,
    MalformedReferenceError,
    Person,
    ReferencePath,
    SoftwareInfo,
    UnitSpec,
    UnresolvedReferenceError,
    VariableDescription,
    resolve,
)
from .validation import (
    DimensionedValue,
    ValidationResult,
    apply_defaults,
    data_value_from_raw,
    validate_dimensions,
    validate_file_format,
    validate_record,
    validate_value,
)

__version__ = "0.1.0"
