"""Recursive-descent parser for a pragmatic Java subset.

The contract is narrower than full Java: the tree must faithfully expose
imports, type declarations, field/local-variable declarations (with erased
simple type names), and every method invocation / object creation / literal
reachable in method bodies. Constructs outside the subset (annotations,
generic bounds, lambdas, switch expressions, ...) are consumed permissively;
whatever invocations they contain still surface in the tree, usually under
Unknown nodes.

Error recovery is member-granular: a malformed member produces a recovered
diagnostic and an Unknown node. The file is rejected (fatal diagnostic) only
when the top-level structure is unusable, e.g. stray tokens between type
declarations or a member whose bracket nesting never returns to balance.
"""

from __future__ import annotations

from pathlib import Path

from .java_ast import AstNode, NodeKind, ParseDiagnostic, ParseResult, Severity
from .java_lexer import (
    PRIMITIVE_TYPES,
    LexError,
    Token,
    TokenKind,
    decode_integer,
    decode_string,
    tokenize,
)
from .spans import Span

_MODIFIERS = frozenset(
    """public protected private static final abstract native synchronized
    transient volatile strictfp default""".split()
)

_TYPE_KEYWORDS = frozenset({"class", "interface", "enum"})

_ASSIGN_OPS = frozenset(
    {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}
)

_BINARY_OPS = frozenset(
    {"||", "&&", "|", "^", "&", "==", "!=", "<", ">", "<=", ">=", "<<", ">>", ">>>",
     "+", "-", "*", "/", "%"}
)

# Tokens allowed inside a <...> type-argument section.
_GENERIC_TOKENS = frozenset({",", ".", "?", "extends", "super", "&", "[", "]", "@"})

_PRIMARY_START_PUNCT = frozenset({"(", "!", "~", "{"})
_PRIMARY_START_KEYWORDS = frozenset({"new", "this", "super", "true", "false", "null", "switch"})


class _ParseFail(Exception):
    def __init__(self, message: str, span: Span) -> None:
        super().__init__(message)
        self.message = message
        self.span = span


class _Parser:
    def __init__(self, tokens: list[Token], file: str) -> None:
        self._toks = [t for t in tokens if t.kind is not TokenKind.COMMENT]
        self._file = file
        self._i = 0
        self.diagnostics: list[ParseDiagnostic] = []

    # -- cursor ---------------------------------------------------------

    def _peek(self, k: int = 0) -> Token:
        i = min(self._i + k, len(self._toks) - 1)
        return self._toks[i]

    def _at_end(self) -> bool:
        return self._peek().kind is TokenKind.END

    def _at(self, *texts: str) -> bool:
        t = self._peek()
        return t.kind in (TokenKind.PUNCT, TokenKind.KEYWORD) and t.text in texts

    def _at_ident(self, k: int = 0) -> bool:
        return self._peek(k).kind is TokenKind.IDENTIFIER

    def _advance(self) -> Token:
        t = self._toks[self._i]
        if t.kind is not TokenKind.END:
            self._i += 1
        return t

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            t = self._peek()
            raise _ParseFail(f"expected {text!r}, found {t.text or 'end of file'!r}", t.span)
        return self._advance()

    def _expect_ident(self) -> Token:
        if not self._at_ident():
            t = self._peek()
            raise _ParseFail(f"expected identifier, found {t.text or 'end of file'!r}", t.span)
        return self._advance()

    def _span_from(self, start_tok: Token) -> Span:
        end = self._toks[self._i - 1] if self._i > 0 else start_tok
        start = (start_tok.span.start_line, start_tok.span.start_col)
        if end.kind is TokenKind.END or (end.span.end_line, end.span.end_col) < start:
            return Span.point(self._file, *start)
        return Span(self._file, *start, end.span.end_line, end.span.end_col)

    # -- compilation unit -------------------------------------------------

    def parse_unit(self) -> ParseResult:
        first = self._peek()
        children: list[AstNode] = []
        try:
            self._skip_annotations()
            if self._at("package"):
                children.append(self._parse_package())
            while True:
                self._skip_annotations()
                if not self._at("import"):
                    break
                children.append(self._parse_import())
            while not self._at_end():
                if self._at(";"):
                    self._advance()
                    continue
                children.append(self._parse_type_decl())
        except _ParseFail as fail:
            self.diagnostics.append(
                ParseDiagnostic(fail.span, fail.message, Severity.FATAL)
            )
            return ParseResult(None, self.diagnostics)
        span = self._span_from(first) if children else Span.point(self._file, 1, 1)
        unit = AstNode(NodeKind.SOURCE_UNIT, span, children)
        return ParseResult(unit, self.diagnostics)

    def _parse_dotted_name(self) -> str:
        parts = [self._expect_ident().text]
        while self._at(".") and self._at_ident(1):
            self._advance()
            parts.append(self._advance().text)
        return ".".join(parts)

    def _parse_package(self) -> AstNode:
        start = self._expect("package")
        path = self._parse_dotted_name()
        self._expect(";")
        return AstNode(NodeKind.PACKAGE_DECL, self._span_from(start), path=path)

    def _parse_import(self) -> AstNode:
        start = self._expect("import")
        is_static = False
        if self._at("static"):
            self._advance()
            is_static = True
        path = self._parse_dotted_name()
        is_wildcard = False
        if self._at(".") and self._peek(1).text == "*":
            self._advance()
            self._advance()
            is_wildcard = True
        self._expect(";")
        return AstNode(
            NodeKind.IMPORT_DECL,
            self._span_from(start),
            path=path,
            is_static=is_static,
            is_wildcard=is_wildcard,
        )

    # -- annotations / modifiers ------------------------------------------

    def _skip_annotations(self) -> None:
        # '@interface' introduces an annotation declaration, not a use.
        while self._at("@") and not self._peek(1).text == "interface":
            self._advance()
            self._parse_dotted_name()
            if self._at("("):
                self._skip_balanced("(", ")")

    def _skip_modifiers(self) -> None:
        while True:
            if self._peek().kind is TokenKind.KEYWORD and self._peek().text in _MODIFIERS:
                self._advance()
            elif self._at("@") and self._peek(1).text != "interface":
                self._skip_annotations()
            elif self._at_ident() and self._peek().text in ("sealed",) and self._peek(1).kind in (
                TokenKind.KEYWORD,
                TokenKind.IDENTIFIER,
            ):
                self._advance()
            else:
                return

    def _skip_balanced(self, open_text: str, close_text: str) -> None:
        depth = 0
        start = self._peek()
        while True:
            if self._at_end():
                raise _ParseFail(f"unbalanced {open_text!r}", start.span)
            t = self._advance()
            if t.text == open_text:
                depth += 1
            elif t.text == close_text:
                depth -= 1
                if depth == 0:
                    return

    # -- type declarations --------------------------------------------------

    def _at_type_decl(self) -> bool:
        k = 0
        while True:
            t = self._peek(k)
            if t.kind is TokenKind.KEYWORD and t.text in _MODIFIERS:
                k += 1
                continue
            if t.text == "@" and self._peek(k + 1).text == "interface":
                return True
            if t.text == "@":
                # Annotation use: skip its name and optional arguments by
                # scanning; conservative (no nesting inspection needed here).
                k += 2
                while self._peek(k).text == "." and self._peek(k + 1).kind is TokenKind.IDENTIFIER:
                    k += 2
                if self._peek(k).text == "(":
                    depth = 0
                    while True:
                        tt = self._peek(k)
                        if tt.kind is TokenKind.END:
                            return False
                        if tt.text == "(":
                            depth += 1
                        elif tt.text == ")":
                            depth -= 1
                            if depth == 0:
                                k += 1
                                break
                        k += 1
                continue
            return t.kind is TokenKind.KEYWORD and t.text in _TYPE_KEYWORDS

    def _parse_type_decl(self) -> AstNode:
        start = self._peek()
        self._skip_modifiers()
        self._skip_annotations()
        self._skip_modifiers()
        is_enum = False
        if self._at("@") and self._peek(1).text == "interface":
            self._advance()
            self._advance()
            kind = NodeKind.INTERFACE_DECL
        elif self._at("class", "enum"):
            is_enum = self._peek().text == "enum"
            self._advance()
            kind = NodeKind.CLASS_DECL
        elif self._at("interface"):
            self._advance()
            kind = NodeKind.INTERFACE_DECL
        else:
            t = self._peek()
            raise _ParseFail(
                f"expected type declaration, found {t.text or 'end of file'!r}", t.span
            )
        name = self._expect_ident().text
        if self._at("<"):
            self._skip_generics()
        # extends / implements / permits — consumed permissively up to the body.
        guard = self._peek()
        while not self._at("{"):
            if self._at_end() or self._at(";", "}"):
                raise _ParseFail(f"malformed declaration of {name!r}", guard.span)
            self._advance()
        self._expect("{")
        members = self._parse_type_body(is_enum=is_enum)
        self._expect("}")
        return AstNode(kind, self._span_from(start), members, name=name)

    def _parse_type_body(self, is_enum: bool) -> list[AstNode]:
        members: list[AstNode] = []
        if is_enum:
            members.extend(self._parse_enum_constants())
        while not self._at("}"):
            if self._at_end():
                raise _ParseFail("unexpected end of file in type body", self._peek().span)
            if self._at(";"):
                self._advance()
                continue
            mark = self._i
            try:
                members.append(self._parse_member())
            except _ParseFail as fail:
                unknown = self._recover_member(mark)  # may escalate to fatal
                self.diagnostics.append(
                    ParseDiagnostic(fail.span, fail.message, Severity.RECOVERED)
                )
                if unknown is not None:
                    members.append(unknown)
        return members

    def _parse_enum_constants(self) -> list[AstNode]:
        constants: list[AstNode] = []
        while not self._at(";", "}"):
            if self._at_end():
                raise _ParseFail("unexpected end of file in enum body", self._peek().span)
            self._skip_annotations()
            if not self._at_ident():
                break  # not a constant list; fall through to member parsing
            start = self._peek()
            self._advance()
            children: list[AstNode] = []
            if self._at("("):
                children.append(self._parse_arguments())
            if self._at("{"):
                self._advance()
                children.extend(self._parse_type_body(is_enum=False))
                self._expect("}")
            constants.append(
                AstNode(NodeKind.UNKNOWN, self._span_from(start), children)
            )
            if self._at(","):
                self._advance()
        if self._at(";"):
            self._advance()
        return constants

    def _parse_member(self) -> AstNode:
        start = self._peek()
        self._skip_modifiers()
        self._skip_annotations()
        self._skip_modifiers()
        if self._at_type_decl():
            return self._parse_type_decl()
        if self._at("{"):
            return self._parse_block()  # static/instance initializer
        if self._at("<"):
            self._skip_generics()  # method type parameters
        # Constructor: Name '(' directly.
        if self._at_ident() and self._peek(1).text == "(":
            name = self._advance().text
            return self._finish_method(start, name)
        type_name = self._parse_type_ref()
        name_tok = self._expect_ident()
        if self._at("("):
            return self._finish_method(start, name_tok.text)
        return self._finish_field(start, type_name, name_tok.text)

    def _finish_method(self, start: Token, name: str) -> AstNode:
        children: list[AstNode] = list(self._parse_parameters())
        while self._at("[") and self._peek(1).text == "]":
            self._advance()
            self._advance()
        if self._at("throws"):
            self._advance()
            self._parse_dotted_name()
            while self._at(","):
                self._advance()
                self._parse_dotted_name()
        if self._at("{"):
            children.append(self._parse_block())
        elif self._at("default"):  # annotation member default value
            self._advance()
            children.append(self._parse_expression())
            self._expect(";")
        else:
            self._expect(";")
        return AstNode(NodeKind.METHOD_DECL, self._span_from(start), children, name=name)

    def _parse_parameters(self) -> list[AstNode]:
        self._expect("(")
        params: list[AstNode] = []
        while not self._at(")"):
            if self._at_end():
                raise _ParseFail("unterminated parameter list", self._peek().span)
            self._skip_annotations()
            if self._at("final"):
                self._advance()
                self._skip_annotations()
            pstart = self._peek()
            type_name = self._parse_type_ref()
            if self._at("..."):
                self._advance()
            if self._at("this"):  # receiver parameter; declares nothing
                self._advance()
            else:
                pname = self._expect_ident().text
                while self._at("[") and self._peek(1).text == "]":
                    self._advance()
                    self._advance()
                params.append(
                    AstNode(
                        NodeKind.LOCAL_VAR_DECL,
                        self._span_from(pstart),
                        type_name=type_name,
                        declared=(pname,),
                    )
                )
            if self._at(","):
                self._advance()
            elif not self._at(")"):
                t = self._peek()
                raise _ParseFail(f"malformed parameter list at {t.text!r}", t.span)
        self._expect(")")
        return params

    def _finish_field(self, start: Token, type_name: str, first_name: str) -> AstNode:
        names = [first_name]
        inits: list[AstNode] = []
        while True:
            while self._at("[") and self._peek(1).text == "]":
                self._advance()
                self._advance()
            if self._at("="):
                self._advance()
                inits.append(self._parse_variable_init())
            if self._at(","):
                self._advance()
                names.append(self._expect_ident().text)
                continue
            break
        self._expect(";")
        return AstNode(
            NodeKind.FIELD_DECL,
            self._span_from(start),
            inits,
            type_name=type_name,
            declared=tuple(names),
        )

    # -- recovery ------------------------------------------------------------

    def _recover_member(self, mark: int) -> AstNode | None:
        """Skip a malformed member; None when nothing could be consumed.

        Raises _ParseFail (fatal) when the enclosing brace closes while
        parentheses or brackets are still open, or at end of file.
        """
        self._i = mark
        start = self._peek()
        paren = bracket = brace = 0
        consumed = 0
        while True:
            t = self._peek()
            if t.kind is TokenKind.END:
                raise _ParseFail("unterminated member", t.span)
            if t.text == "(":
                paren += 1
            elif t.text == "[":
                bracket += 1
            elif t.text == ")":
                paren -= 1
                if paren < 0:
                    raise _ParseFail("unbalanced ')' in member", t.span)
            elif t.text == "]":
                bracket -= 1
                if bracket < 0:
                    raise _ParseFail("unbalanced ']' in member", t.span)
            elif t.text == "{":
                brace += 1
            elif t.text == "}":
                if brace == 0:
                    if paren > 0 or bracket > 0:
                        raise _ParseFail("type body closed inside brackets", t.span)
                    break  # leave the type's closing brace for the caller
                brace -= 1
                self._advance()
                consumed += 1
                if brace == 0 and paren == 0 and bracket == 0:
                    break  # consumed a complete body
                continue
            elif t.text == ";" and paren == 0 and bracket == 0 and brace == 0:
                self._advance()
                consumed += 1
                break
            self._advance()
            consumed += 1
        if consumed == 0:
            return None
        return AstNode(NodeKind.UNKNOWN, self._span_from(start))

    def _recover_statement(self, mark: int) -> AstNode | None:
        """Skip a malformed statement inside a block; may raise to member level."""
        self._i = mark
        start = self._peek()
        paren = bracket = brace = 0
        consumed = 0
        while True:
            t = self._peek()
            if t.kind is TokenKind.END:
                raise _ParseFail("unterminated statement", t.span)
            if t.text == "(":
                paren += 1
            elif t.text == "[":
                bracket += 1
            elif t.text in (")", "]"):
                if t.text == ")":
                    paren -= 1
                else:
                    bracket -= 1
                if paren < 0 or bracket < 0:
                    raise _ParseFail("unbalanced bracket in statement", t.span)
            elif t.text == "{":
                brace += 1
            elif t.text == "}":
                if brace == 0:
                    if paren > 0 or bracket > 0:
                        raise _ParseFail("block closed inside brackets", t.span)
                    break  # leave for the enclosing block
                brace -= 1
                self._advance()
                consumed += 1
                if brace == 0 and paren == 0 and bracket == 0:
                    break
                continue
            elif t.text == ";" and paren == 0 and bracket == 0 and brace == 0:
                self._advance()
                consumed += 1
                break
            self._advance()
            consumed += 1
        if consumed == 0:
            return None
        return AstNode(NodeKind.UNKNOWN, self._span_from(start))

    # -- types ------------------------------------------------------------

    def _parse_type_base(self) -> str:
        """Primitive or (possibly qualified, possibly generic) class type.

        Returns the erased simple name: the last identifier segment.
        """
        t = self._peek()
        if t.kind is TokenKind.KEYWORD and (t.text in PRIMITIVE_TYPES or t.text == "void"):
            self._advance()
            return t.text
        if t.kind is not TokenKind.IDENTIFIER:
            raise _ParseFail(f"expected type, found {t.text or 'end of file'!r}", t.span)
        name = self._advance().text
        if self._at("<"):
            self._skip_generics()
        while self._at(".") and self._at_ident(1):
            self._advance()
            name = self._advance().text
            if self._at("<"):
                self._skip_generics()
        return name

    def _parse_type_ref(self) -> str:
        name = self._parse_type_base()
        self._skip_annotations()
        while self._at("[") and self._peek(1).text == "]":
            self._advance()
            self._advance()
        return name

    def _skip_generics(self) -> None:
        start = self._expect("<")
        depth = 1
        while depth > 0:
            t = self._peek()
            if t.kind is TokenKind.END:
                raise _ParseFail("unterminated type arguments", start.span)
            if t.text == "<":
                depth += 1
            elif t.text == ">":
                depth -= 1
            elif t.text == ">>":
                depth -= 2
            elif t.text == ">>>":
                depth -= 3
            elif (
                t.kind in (TokenKind.IDENTIFIER,)
                or (t.kind is TokenKind.KEYWORD and t.text in PRIMITIVE_TYPES)
                or t.text in _GENERIC_TOKENS
            ):
                pass
            else:
                raise _ParseFail(f"unexpected {t.text!r} in type arguments", t.span)
            self._advance()
        if depth < 0:
            raise _ParseFail("unbalanced '>' in type arguments", start.span)

    # -- statements ----------------------------------------------------------

    def _parse_block(self) -> AstNode:
        start = self._expect("{")
        stmts: list[AstNode] = []
        while not self._at("}"):
            if self._at_end():
                raise _ParseFail("unterminated block", start.span)
            mark = self._i
            try:
                stmt = self._parse_statement()
            except _ParseFail as fail:
                unknown = self._recover_statement(mark)
                self.diagnostics.append(
                    ParseDiagnostic(fail.span, fail.message, Severity.RECOVERED)
                )
                if unknown is not None:
                    stmts.append(unknown)
                continue
            if stmt is not None:
                stmts.append(stmt)
        self._expect("}")
        return AstNode(NodeKind.BLOCK, self._span_from(start), stmts)

    def _parse_statement(self) -> AstNode | None:
        t = self._peek()
        if t.text == "{":
            return self._parse_block()
        if t.text == ";":
            self._advance()
            return None
        if t.kind is TokenKind.KEYWORD:
            handler = {
                "if": self._parse_if,
                "while": self._parse_while,
                "do": self._parse_do,
                "for": self._parse_for,
                "try": self._parse_try,
                "switch": self._parse_switch,
                "return": self._parse_return_or_throw,
                "throw": self._parse_return_or_throw,
                "break": self._parse_break_or_continue,
                "continue": self._parse_break_or_continue,
                "synchronized": self._parse_synchronized,
                "assert": self._parse_assert,
            }.get(t.text)
            if handler is not None:
                return handler()
        if self._at_type_decl():
            return self._parse_type_decl()
        # Label: IDENT ':' statement   (but not '::' method references).
        if self._at_ident() and self._peek(1).text == ":" :
            self._advance()
            self._advance()
            return self._parse_statement()
        # Contextual 'yield <expr>;' inside arrow-switch blocks.
        if (
            self._at_ident()
            and self._peek().text == "yield"
            and self._peek(1).text not in ("(", ".", ";", "=", "::", "->")
            and self._peek(1).kind is not TokenKind.END
        ):
            start = self._advance()
            children = [self._parse_expression()]
            self._expect(";")
            return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)
        decl = self._try_parse_local_var_decl()
        if decl is not None:
            return decl
        start = self._peek()
        expr = self._parse_expression()
        self._expect(";")
        return AstNode(NodeKind.EXPR_STATEMENT, self._span_from(start), [expr])

    def _parse_if(self) -> AstNode:
        start = self._expect("if")
        self._expect("(")
        children = [self._parse_expression()]
        self._expect(")")
        stmt = self._parse_statement()
        if stmt is not None:
            children.append(stmt)
        if self._at("else"):
            self._advance()
            stmt = self._parse_statement()
            if stmt is not None:
                children.append(stmt)
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)

    def _parse_while(self) -> AstNode:
        start = self._expect("while")
        self._expect("(")
        children = [self._parse_expression()]
        self._expect(")")
        stmt = self._parse_statement()
        if stmt is not None:
            children.append(stmt)
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)

    def _parse_do(self) -> AstNode:
        start = self._expect("do")
        children: list[AstNode] = []
        stmt = self._parse_statement()
        if stmt is not None:
            children.append(stmt)
        self._expect("while")
        self._expect("(")
        children.append(self._parse_expression())
        self._expect(")")
        self._expect(";")
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)

    def _parse_for(self) -> AstNode:
        start = self._expect("for")
        self._expect("(")
        children: list[AstNode] = []
        # Enhanced for: [final] Type name : expr
        mark = self._i
        enhanced = False
        try:
            if self._at("final"):
                self._advance()
            self._skip_annotations()
            dstart = self._peek()
            type_name = self._parse_type_ref()
            name = self._expect_ident().text
            if self._at(":"):
                self._advance()
                children.append(
                    AstNode(
                        NodeKind.LOCAL_VAR_DECL,
                        self._span_from(dstart),
                        type_name=type_name,
                        declared=(name,),
                    )
                )
                children.append(self._parse_expression())
                enhanced = True
        except _ParseFail:
            pass
        if not enhanced:
            self._i = mark
            if not self._at(";"):
                decl = self._try_parse_local_var_decl(terminator=";")
                if decl is not None:
                    children.append(decl)
                else:
                    children.append(self._parse_expression())
                    while self._at(","):
                        self._advance()
                        children.append(self._parse_expression())
                    self._expect(";")
            else:
                self._advance()
            if not self._at(";"):
                children.append(self._parse_expression())
            self._expect(";")
            while not self._at(")"):
                children.append(self._parse_expression())
                if self._at(","):
                    self._advance()
                elif not self._at(")"):
                    t = self._peek()
                    raise _ParseFail(f"malformed for update at {t.text!r}", t.span)
        self._expect(")")
        stmt = self._parse_statement()
        if stmt is not None:
            children.append(stmt)
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)

    def _parse_try(self) -> AstNode:
        start = self._expect("try")
        children: list[AstNode] = []
        if self._at("("):
            self._advance()
            while not self._at(")"):
                decl = self._try_parse_local_var_decl(terminator=None)
                if decl is not None:
                    children.append(decl)
                else:
                    children.append(self._parse_expression())
                if self._at(";"):
                    self._advance()
                elif not self._at(")"):
                    t = self._peek()
                    raise _ParseFail(f"malformed resource list at {t.text!r}", t.span)
            self._expect(")")
        children.append(self._parse_block())
        while self._at("catch"):
            self._advance()
            self._expect("(")
            self._skip_annotations()
            if self._at("final"):
                self._advance()
            cstart = self._peek()
            type_name = self._parse_type_ref()
            while self._at("|"):
                self._advance()
                self._parse_type_ref()
            name = self._expect_ident().text
            self._expect(")")
            children.append(
                AstNode(
                    NodeKind.LOCAL_VAR_DECL,
                    self._span_from(cstart),
                    type_name=type_name,
                    declared=(name,),
                )
            )
            children.append(self._parse_block())
        if self._at("finally"):
            self._advance()
            children.append(self._parse_block())
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)

    def _parse_switch(self) -> AstNode:
        start = self._expect("switch")
        self._expect("(")
        children = [self._parse_expression()]
        self._expect(")")
        self._expect("{")
        while not self._at("}"):
            if self._at_end():
                raise _ParseFail("unterminated switch", start.span)
            if self._at("case", "default"):
                self._parse_switch_label(children)
                continue
            mark = self._i
            try:
                stmt = self._parse_statement()
            except _ParseFail as fail:
                unknown = self._recover_statement(mark)
                self.diagnostics.append(
                    ParseDiagnostic(fail.span, fail.message, Severity.RECOVERED)
                )
                if unknown is not None:
                    children.append(unknown)
                continue
            if stmt is not None:
                children.append(stmt)
        self._expect("}")
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)

    def _parse_switch_label(self, children: list[AstNode]) -> None:
        # Consume 'case ... :' / 'case ... ->' permissively; arrow arms parse
        # one statement (or expression statement) as the arm body.
        start = self._advance()  # case/default
        depth = 0
        while True:
            t = self._peek()
            if t.kind is TokenKind.END:
                raise _ParseFail("unterminated switch label", start.span)
            if t.text in ("(", "["):
                depth += 1
            elif t.text in (")", "]"):
                depth -= 1
            elif depth == 0 and t.text in (":", "->"):
                arrow = t.text == "->"
                self._advance()
                break
            self._advance()
        if arrow:
            if self._at("{"):
                children.append(self._parse_block())
            elif self._at("throw"):
                children.append(self._parse_return_or_throw())
            else:
                expr = self._parse_expression()
                children.append(expr)
                if self._at(";"):
                    self._advance()

    def _parse_return_or_throw(self) -> AstNode:
        start = self._advance()
        children: list[AstNode] = []
        if not self._at(";"):
            children.append(self._parse_expression())
        self._expect(";")
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)

    def _parse_break_or_continue(self) -> AstNode:
        start = self._advance()
        if self._at_ident():
            self._advance()
        self._expect(";")
        return AstNode(NodeKind.UNKNOWN, self._span_from(start))

    def _parse_synchronized(self) -> AstNode:
        start = self._expect("synchronized")
        children: list[AstNode] = []
        if self._at("("):
            self._advance()
            children.append(self._parse_expression())
            self._expect(")")
        children.append(self._parse_block())
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)

    def _parse_assert(self) -> AstNode:
        start = self._expect("assert")
        children = [self._parse_expression()]
        if self._at(":"):
            self._advance()
            children.append(self._parse_expression())
        self._expect(";")
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)

    def _try_parse_local_var_decl(self, terminator: str | None = ";") -> AstNode | None:
        """Parse 'Type name [= init] [, name ...] ;' or roll back and return None.

        ``terminator``: ";" consumes the trailing semicolon, None leaves the
        cursor after the declarators (for try-with-resources / for-init use).
        """
        mark = self._i
        start = self._peek()
        try:
            self._skip_annotations()
            if self._at("final"):
                self._advance()
                self._skip_annotations()
            type_name = self._parse_type_base()
            array_suffix = False
            while self._at("[") and self._peek(1).text == "]":
                self._advance()
                self._advance()
                array_suffix = True
            if not self._at_ident():
                raise _ParseFail("not a declaration", start.span)
            follow = self._peek(1).text
            if follow not in ("=", ";", ",", "[") and not (
                terminator is None and follow == ")"
            ):
                raise _ParseFail("not a declaration", start.span)
            _ = array_suffix
        except _ParseFail:
            self._i = mark
            return None
        names = []
        inits: list[AstNode] = []
        while True:
            names.append(self._expect_ident().text)
            while self._at("[") and self._peek(1).text == "]":
                self._advance()
                self._advance()
            if self._at("="):
                self._advance()
                inits.append(self._parse_variable_init())
            if self._at(","):
                self._advance()
                continue
            break
        if terminator == ";":
            self._expect(";")
        return AstNode(
            NodeKind.LOCAL_VAR_DECL,
            self._span_from(start),
            inits,
            type_name=type_name,
            declared=tuple(names),
        )

    def _parse_variable_init(self) -> AstNode:
        if self._at("{"):
            return self._parse_array_initializer()
        return self._parse_expression()

    def _parse_array_initializer(self) -> AstNode:
        start = self._expect("{")
        children: list[AstNode] = []
        while not self._at("}"):
            if self._at_end():
                raise _ParseFail("unterminated array initializer", start.span)
            if self._at("{"):
                children.append(self._parse_array_initializer())
            else:
                children.append(self._parse_expression())
            if self._at(","):
                self._advance()
        self._expect("}")
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), children)

    # -- expressions -----------------------------------------------------------

    def _parse_expression(self) -> AstNode:
        return self._parse_assignment()

    def _parse_assignment(self) -> AstNode:
        left = self._parse_ternary()
        if self._peek().text in _ASSIGN_OPS and self._peek().kind is TokenKind.PUNCT:
            start = left
            self._advance()
            right = self._parse_assignment()
            span = Span(
                self._file,
                start.span.start_line,
                start.span.start_col,
                right.span.end_line,
                right.span.end_col,
            )
            return AstNode(NodeKind.UNKNOWN, span, [left, right])
        return left

    def _parse_ternary(self) -> AstNode:
        cond = self._parse_binary()
        if self._at("?"):
            self._advance()
            then = self._parse_expression()
            self._expect(":")
            other = self._parse_ternary()
            span = Span(
                self._file,
                cond.span.start_line,
                cond.span.start_col,
                other.span.end_line,
                other.span.end_col,
            )
            return AstNode(NodeKind.UNKNOWN, span, [cond, then, other])
        return cond

    def _parse_binary(self) -> AstNode:
        left = self._parse_unary()
        while True:
            t = self._peek()
            if t.kind is TokenKind.KEYWORD and t.text == "instanceof":
                self._advance()
                self._parse_type_ref()
                if self._at_ident():
                    self._advance()  # pattern binding, not tracked
                left = AstNode(NodeKind.UNKNOWN, left.span, [left])
                continue
            if t.kind is not TokenKind.PUNCT or t.text not in _BINARY_OPS:
                return left
            self._advance()
            right = self._parse_unary()
            span = Span(
                self._file,
                left.span.start_line,
                left.span.start_col,
                right.span.end_line,
                right.span.end_col,
            )
            left = AstNode(NodeKind.UNKNOWN, span, [left, right])

    def _parse_unary(self) -> AstNode:
        t = self._peek()
        if t.kind is TokenKind.PUNCT and t.text in ("+", "-", "!", "~", "++", "--"):
            op = self._advance()
            operand = self._parse_unary()
            if (
                op.text == "-"
                and operand.kind is NodeKind.LITERAL
                and isinstance(operand.value, (int, float))
                and not isinstance(operand.value, bool)
            ):
                span = Span(
                    self._file,
                    op.span.start_line,
                    op.span.start_col,
                    operand.span.end_line,
                    operand.span.end_col,
                )
                return AstNode(
                    NodeKind.LITERAL,
                    span,
                    text="-" + (operand.text or ""),
                    value=-operand.value,
                )
            return AstNode(NodeKind.UNKNOWN, op.span, [operand])
        if t.text == "(":
            node = self._parse_paren_or_cast_or_lambda()
        else:
            node = self._parse_primary()
        return self._parse_postfix(node)

    def _parse_paren_or_cast_or_lambda(self) -> AstNode:
        start = self._peek()
        # Lambda: scan to the matching ')' and look for '->'.
        depth = 0
        k = 0
        while True:
            t = self._peek(k)
            if t.kind is TokenKind.END:
                break
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                depth -= 1
                if depth == 0:
                    if self._peek(k + 1).text == "->":
                        return self._parse_lambda_from_parens()
                    break
            k += 1
        # Cast: '(' Type ')' followed by something castable.
        mark = self._i
        try:
            self._expect("(")
            type_name = self._parse_type_ref()
            self._expect(")")
            nxt = self._peek()
            primitive = type_name in PRIMITIVE_TYPES
            castable = (
                nxt.kind in (TokenKind.IDENTIFIER, TokenKind.NUMBER, TokenKind.STRING, TokenKind.CHAR)
                or (nxt.kind is TokenKind.KEYWORD and nxt.text in _PRIMARY_START_KEYWORDS)
                or (nxt.kind is TokenKind.PUNCT and nxt.text in ("(", "!", "~"))
                or (primitive and nxt.kind is TokenKind.PUNCT and nxt.text in ("+", "-"))
            )
            if not castable:
                raise _ParseFail("not a cast", nxt.span)
            return self._parse_unary()  # the cast itself is transparent
        except _ParseFail:
            self._i = mark
        self._expect("(")
        inner = self._parse_expression()
        self._expect(")")
        _ = start
        return inner

    def _parse_lambda_from_parens(self) -> AstNode:
        start = self._expect("(")
        depth = 1
        while depth > 0:
            t = self._advance()
            if t.kind is TokenKind.END:
                raise _ParseFail("unterminated lambda parameters", start.span)
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                depth -= 1
        self._expect("->")
        body = self._parse_block() if self._at("{") else self._parse_expression()
        return AstNode(NodeKind.UNKNOWN, self._span_from(start), [body])

    def _parse_primary(self) -> AstNode:
        t = self._peek()
        if t.kind is TokenKind.NUMBER:
            self._advance()
            value: object = decode_integer(t.text)
            return AstNode(NodeKind.LITERAL, t.span, text=t.text, value=value)
        if t.kind is TokenKind.STRING:
            self._advance()
            return AstNode(NodeKind.LITERAL, t.span, text=t.text, value=decode_string(t.text))
        if t.kind is TokenKind.CHAR:
            self._advance()
            return AstNode(NodeKind.LITERAL, t.span, text=t.text)
        if t.kind is TokenKind.KEYWORD:
            if t.text in ("true", "false"):
                self._advance()
                return AstNode(NodeKind.LITERAL, t.span, text=t.text, value=t.text == "true")
            if t.text == "null":
                self._advance()
                return AstNode(NodeKind.LITERAL, t.span, text=t.text)
            if t.text == "new":
                return self._parse_creation()
            if t.text in ("this", "super"):
                return self._parse_name_chain()
            if t.text == "switch":
                return self._parse_switch()
            if t.text in PRIMITIVE_TYPES or t.text == "void":
                # e.g. int.class, int[].class
                start = self._advance()
                while self._at("[") and self._peek(1).text == "]":
                    self._advance()
                    self._advance()
                self._expect(".")
                self._expect("class")
                return AstNode(NodeKind.UNKNOWN, self._span_from(start))
        if t.kind is TokenKind.IDENTIFIER:
            return self._parse_name_chain()
        if t.text == "{":
            return self._parse_array_initializer()
        raise _ParseFail(f"expected expression, found {t.text or 'end of file'!r}", t.span)

    def _parse_creation(self) -> AstNode:
        start = self._expect("new")
        type_name = self._parse_type_base()
        children: list[AstNode] = []
        if self._at("["):
            while self._at("[") :
                self._advance()
                if not self._at("]"):
                    children.append(self._parse_expression())
                self._expect("]")
            if self._at("{"):
                children.append(self._parse_array_initializer())
            return AstNode(
                NodeKind.OBJECT_CREATION,
                self._span_from(start),
                children,
                type_name=type_name,
            )
        children.append(self._parse_arguments())
        node = AstNode(
            NodeKind.OBJECT_CREATION, self._span_from(start), children, type_name=type_name
        )
        if self._at("{"):  # anonymous class body
            self._advance()
            node.children.extend(self._parse_type_body(is_enum=False))
            self._expect("}")
            node.span = self._span_from(start)
        return node

    def _parse_arguments(self) -> AstNode:
        start = self._expect("(")
        children: list[AstNode] = []
        while not self._at(")"):
            if self._at_end():
                raise _ParseFail("unterminated argument list", start.span)
            children.append(self._parse_expression())
            if self._at(","):
                self._advance()
            elif not self._at(")"):
                t = self._peek()
                raise _ParseFail(f"malformed argument list at {t.text!r}", t.span)
        self._expect(")")
        return AstNode(NodeKind.ARGUMENT_LIST, self._span_from(start), children)

    def _parse_name_chain(self) -> AstNode:
        """Identifier chain: plain name, field access, or a method invocation
        whose qualifier is the chain read so far."""
        start = self._advance()  # identifier / this / super
        segments = [start.text]
        while True:
            if self._at("("):
                args = self._parse_arguments()
                qualifier = ".".join(segments[:-1]) or None
                return AstNode(
                    NodeKind.METHOD_INVOCATION,
                    self._span_from(start),
                    [args],
                    qualifier=qualifier,
                    member=segments[-1],
                )
            if self._at(".") and self._at_ident(1):
                self._advance()
                segments.append(self._advance().text)
                continue
            if self._at(".") and self._peek(1).text == "<":
                self._advance()
                self._skip_generics()
                member = self._expect_ident().text
                args = self._parse_arguments()
                return AstNode(
                    NodeKind.METHOD_INVOCATION,
                    self._span_from(start),
                    [args],
                    qualifier=".".join(segments) or None,
                    member=member,
                )
            break
        if len(segments) == 1:
            return AstNode(NodeKind.IDENTIFIER, self._span_from(start), name=segments[0])
        return AstNode(
            NodeKind.FIELD_ACCESS,
            self._span_from(start),
            qualifier=".".join(segments[:-1]),
            member=segments[-1],
        )

    def _parse_postfix(self, node: AstNode) -> AstNode:
        while True:
            if self._at("."):
                nxt = self._peek(1)
                if nxt.kind is TokenKind.IDENTIFIER:
                    if self._peek(2).text == "(":
                        self._advance()
                        member = self._advance().text
                        args = self._parse_arguments()
                        span = Span(
                            self._file,
                            node.span.start_line,
                            node.span.start_col,
                            args.span.end_line,
                            args.span.end_col,
                        )
                        node = AstNode(
                            NodeKind.METHOD_INVOCATION,
                            span,
                            [node, args],
                            member=member,
                        )
                        continue
                    self._advance()
                    member_tok = self._advance()
                    span = Span(
                        self._file,
                        node.span.start_line,
                        node.span.start_col,
                        member_tok.span.end_line,
                        member_tok.span.end_col,
                    )
                    node = AstNode(
                        NodeKind.FIELD_ACCESS, span, [node], member=member_tok.text
                    )
                    continue
                if nxt.text in ("class", "this"):
                    self._advance()
                    self._advance()
                    node = AstNode(NodeKind.UNKNOWN, node.span, [node])
                    continue
                if nxt.text == "new":
                    self._advance()
                    creation = self._parse_creation()
                    node = AstNode(NodeKind.UNKNOWN, node.span, [node, creation])
                    continue
                if nxt.text == "<":
                    self._advance()
                    self._skip_generics()
                    member = self._expect_ident().text
                    args = self._parse_arguments()
                    node = AstNode(
                        NodeKind.METHOD_INVOCATION,
                        self._span_from_pair(node, args),
                        [node, args],
                        member=member,
                    )
                    continue
                break
            if self._at("["):
                self._advance()
                index = None
                if not self._at("]"):
                    index = self._parse_expression()
                self._expect("]")
                children = [node] if index is None else [node, index]
                node = AstNode(NodeKind.UNKNOWN, node.span, children)
                continue
            if self._at("++", "--"):
                self._advance()
                node = AstNode(NodeKind.UNKNOWN, node.span, [node])
                continue
            if self._at("::"):
                self._advance()
                if self._at("new"):
                    self._advance()
                else:
                    self._expect_ident()
                node = AstNode(NodeKind.UNKNOWN, node.span, [node])
                continue
            if self._at("->"):
                self._advance()
                body = self._parse_block() if self._at("{") else self._parse_expression()
                node = AstNode(NodeKind.UNKNOWN, node.span, [node, body])
                continue
            break
        return node

    def _span_from_pair(self, first: AstNode, last: AstNode) -> Span:
        return Span(
            self._file,
            first.span.start_line,
            first.span.start_col,
            last.span.end_line,
            last.span.end_col,
        )


def parse_compilation_unit(tokens: list[Token], file: str = "<memory>") -> ParseResult:
    """Parse a token sequence from :func:`vvd.java_lexer.tokenize`."""
    return _Parser(tokens, file).parse_unit()


def parse_source(source: str, file: str = "<memory>") -> ParseResult:
    """Tokenize and parse source text. LexError becomes a fatal diagnostic."""
    try:
        tokens = tokenize(source, file)
    except LexError as err:
        return ParseResult(None, [ParseDiagnostic(err.span, str(err), Severity.FATAL)])
    return parse_compilation_unit(tokens, file)


def parse_file(path: str | Path, label: str | None = None) -> ParseResult:
    """Read and parse one ``.java`` file.

    ``label`` overrides the file name recorded in spans (used by the corpus
    scanner to keep paths relative to the app root). I/O problems raise
    OSError, distinct from lexer/parser diagnostics. Non-UTF-8 content is
    decoded with replacement characters plus a recovered diagnostic.
    """
    p = Path(path)
    file_label = label if label is not None else str(p)
    data = p.read_bytes()
    diagnostics: list[ParseDiagnostic] = []
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        text = data.decode("utf-8", errors="replace")
        diagnostics.append(
            ParseDiagnostic(
                Span.point(file_label, 1, 1),
                "non-UTF-8 bytes replaced during decoding",
                Severity.RECOVERED,
            )
        )
    result = parse_source(text, file_label)
    result.diagnostics[:0] = diagnostics
    return result
