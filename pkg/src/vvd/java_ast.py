"""AST node and diagnostic types produced by the Java front end.

A single node class covers the whole subset; ``kind`` selects which of the
optional attribute fields are meaningful. Values are plain dataclasses so
structural equality works for determinism checks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .spans import Span


class NodeKind(enum.Enum):
    SOURCE_UNIT = "SourceUnit"
    PACKAGE_DECL = "PackageDecl"
    IMPORT_DECL = "ImportDecl"
    CLASS_DECL = "ClassDecl"
    INTERFACE_DECL = "InterfaceDecl"
    FIELD_DECL = "FieldDecl"
    METHOD_DECL = "MethodDecl"
    LOCAL_VAR_DECL = "LocalVarDecl"
    BLOCK = "Block"
    EXPR_STATEMENT = "ExprStatement"
    METHOD_INVOCATION = "MethodInvocation"
    OBJECT_CREATION = "ObjectCreation"
    FIELD_ACCESS = "FieldAccess"
    IDENTIFIER = "Identifier"
    LITERAL = "Literal"
    ARGUMENT_LIST = "ArgumentList"
    UNKNOWN = "Unknown"


@dataclass
class AstNode:
    kind: NodeKind
    span: Span
    children: list["AstNode"] = field(default_factory=list)

    # Per-kind attributes; unused ones stay at their defaults.
    name: str | None = None  # ClassDecl/InterfaceDecl/MethodDecl/Identifier
    path: str | None = None  # PackageDecl/ImportDecl dotted path
    is_static: bool = False  # ImportDecl
    is_wildcard: bool = False  # ImportDecl
    type_name: str | None = None  # FieldDecl/LocalVarDecl/ObjectCreation
    declared: tuple[str, ...] = ()  # FieldDecl/LocalVarDecl identifiers
    qualifier: str | None = None  # MethodInvocation/FieldAccess identifier chain
    member: str | None = None  # MethodInvocation/FieldAccess member name
    text: str | None = None  # Literal raw source text
    value: object = None  # Literal decoded constant, when decodable


class Severity(enum.Enum):
    FATAL = "fatal"
    RECOVERED = "recovered"


@dataclass(frozen=True)
class ParseDiagnostic:
    span: Span
    message: str
    severity: Severity


@dataclass
class ParseResult:
    """Outcome of parsing one file: a unit unless a fatal diagnostic occurred."""

    unit: AstNode | None
    diagnostics: list[ParseDiagnostic]

    @property
    def fatal(self) -> bool:
        return self.unit is None
