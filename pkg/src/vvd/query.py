"""Traversal and matching utilities shared by all detectors.

Variable binding is file-local and flow-insensitive: one pass collects every
declared variable's erased type name, and receiver types of invocations are
resolved from the leftmost qualifier segment. Static calls resolve when the
qualifier names a known type (imported/declared in the file) or looks like a
type name; chained factory calls of the shape ``T.getDefault().m(...)``
inherit the factory's type.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Set
from dataclasses import dataclass

from .java_ast import AstNode, NodeKind
from .spans import Span

FACTORY_MEMBERS = frozenset({"getDefault", "getInstance"})

_INFINITE_QUALIFIERS = frozenset({"ValueAnimator", "ObjectAnimator", "Animation"})


@dataclass(frozen=True)
class VarBinding:
    """Variable name -> declared type simple name, plus the file's type names."""

    var_types: dict[str, str]
    type_names: frozenset[str]


@dataclass(frozen=True)
class InvocationSite:
    qualifier: str | None
    member: str
    argument_constants: tuple[object, ...]
    receiver_type: str | None
    span: Span


def dfs(unit: AstNode) -> Iterator[AstNode]:
    """Pre-order depth-first traversal, children in source order."""
    stack = [unit]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def bind_variables(unit: AstNode) -> VarBinding:
    """Collect declared variables (locals, fields, parameters); last wins."""
    var_types: dict[str, str] = {}
    type_names: set[str] = set()
    for node in dfs(unit):
        kind = node.kind
        if kind in (NodeKind.LOCAL_VAR_DECL, NodeKind.FIELD_DECL):
            if node.type_name:
                type_names.add(node.type_name)
                for name in node.declared:
                    var_types[name] = node.type_name
        elif kind is NodeKind.IMPORT_DECL:
            if node.path and not node.is_wildcard:
                type_names.add(node.path.rsplit(".", 1)[-1])
        elif kind is NodeKind.OBJECT_CREATION:
            if node.type_name:
                type_names.add(node.type_name)
        elif kind in (NodeKind.CLASS_DECL, NodeKind.INTERFACE_DECL):
            if node.name:
                type_names.add(node.name)
    return VarBinding(var_types, frozenset(type_names))


def _looks_like_type(name: str) -> bool:
    return bool(name) and name[0].isupper()


def _resolve_receiver(node: AstNode, binding: VarBinding) -> tuple[str | None, bool]:
    """Resolve an invocation's receiver type.

    Returns (type simple name or None, resolved-as-static-call flag).
    """
    if node.qualifier:
        segments = node.qualifier.split(".")
        while segments and segments[0] in ("this", "super"):
            segments.pop(0)
        if not segments:
            return None, False
        head = segments[0]
        if head in binding.var_types:
            return binding.var_types[head], False
        if len(segments) == 1:
            if head in binding.type_names or _looks_like_type(head):
                return head, True
            return None, False
        # Fully qualified static call: package-like prefix, type-like tail.
        tail = segments[-1]
        if all(s[:1].islower() for s in segments[:-1]) and (
            tail in binding.type_names or _looks_like_type(tail)
        ):
            return tail, True
        return None, False
    receiver = invocation_receiver(node)
    if receiver is None:
        return None, False
    if receiver.kind is NodeKind.OBJECT_CREATION:
        return receiver.type_name, False
    if (
        receiver.kind is NodeKind.METHOD_INVOCATION
        and receiver.member in FACTORY_MEMBERS
    ):
        inner, inner_static = _resolve_receiver(receiver, binding)
        if inner_static:
            return inner, False
    return None, False


def invocation_receiver(node: AstNode) -> AstNode | None:
    """The receiver expression of a chained invocation, if any."""
    if node.children and node.children[0].kind is not NodeKind.ARGUMENT_LIST:
        return node.children[0]
    return None


def invocation_arguments(node: AstNode) -> list[AstNode]:
    for child in node.children:
        if child.kind is NodeKind.ARGUMENT_LIST:
            return child.children
    return []


def find_invocations(
    unit: AstNode,
    binding: VarBinding,
    receiver_type_match: Callable[[str], bool] | None,
    member_names: Set[str] | None,
) -> list[InvocationSite]:
    """All invocations matching the receiver-type predicate and member set.

    ``receiver_type_match`` None matches every invocation, including ones
    whose receiver cannot be resolved. ``member_names`` None matches every
    member name. Results are in depth-first order.
    """
    sites: list[InvocationSite] = []
    for node in dfs(unit):
        if node.kind is not NodeKind.METHOD_INVOCATION:
            continue
        if member_names is not None and node.member not in member_names:
            continue
        receiver_type, _ = _resolve_receiver(node, binding)
        if receiver_type_match is not None:
            if receiver_type is None or not receiver_type_match(receiver_type):
                continue
        constants = tuple(decode_constant(a) for a in invocation_arguments(node))
        sites.append(
            InvocationSite(
                qualifier=node.qualifier,
                member=node.member or "",
                argument_constants=constants,
                receiver_type=receiver_type,
                span=node.span,
            )
        )
    return sites


def find_imports(unit: AstNode, path_prefix: str) -> list[AstNode]:
    """ImportDecls equal to the prefix or inside it (dot-boundary rule)."""
    matches = []
    for node in dfs(unit):
        if node.kind is not NodeKind.IMPORT_DECL or not node.path:
            continue
        if node.path == path_prefix or node.path.startswith(path_prefix + "."):
            matches.append(node)
    return matches


def decode_constant(node: AstNode) -> object | None:
    """Constant value of an argument expression, when statically decodable.

    Integers and string literals decode to their values; the infinite-repeat
    constants (ValueAnimator/ObjectAnimator/Animation ``.INFINITE`` and the
    bare identifier) decode to the name "INFINITE". Everything else (vars,
    arithmetic, nested calls) is undecodable -> None.
    """
    if node.kind is NodeKind.LITERAL:
        value = node.value
        if isinstance(value, bool):
            return None
        if isinstance(value, (int, str)):
            return value
        return None
    if node.kind is NodeKind.IDENTIFIER and node.name == "INFINITE":
        return "INFINITE"
    if (
        node.kind is NodeKind.FIELD_ACCESS
        and node.member == "INFINITE"
        and node.qualifier in _INFINITE_QUALIFIERS
    ):
        return "INFINITE"
    return None


def receiver_variable(site: InvocationSite, binding: VarBinding) -> str | None:
    """The bound variable a site was resolved through, for per-variable grouping."""
    if not site.qualifier:
        return None
    segments = site.qualifier.split(".")
    while segments and segments[0] in ("this", "super"):
        segments.pop(0)
    if segments and segments[0] in binding.var_types:
        return segments[0]
    return None


def type_equals(*names: str) -> Callable[[str], bool]:
    targets = frozenset(names)
    return lambda type_name: type_name in targets


def type_contains(fragment: str) -> Callable[[str], bool]:
    return lambda type_name: fragment in type_name


def node_count(unit: AstNode) -> int:
    return sum(1 for _ in dfs(unit))


def iter_units(parsed: Iterable[tuple[str, AstNode | None]]) -> Iterator[tuple[str, AstNode]]:
    for path, unit in parsed:
        if unit is not None:
            yield path, unit
