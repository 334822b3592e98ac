"""Parser for the bitvector mini language."""

from collections.abc import Iterable
from itertools import count

from lark import Lark, Token, Transformer, Tree, v_args
from lark.exceptions import UnexpectedInput, UnexpectedToken, VisitError

from bitbranch.domain.syntax import (
    RESERVED_WORDS,
    Assign,
    Assume,
    Binary,
    BinOp,
    Block,
    BoolLit,
    Error,
    Expr,
    Havoc,
    IfCond,
    IfNondet,
    Ite,
    Lit,
    Opaque,
    Program,
    Stmt,
    Unary,
    UnOp,
    Var,
    While,
    WidthConst,
)
from bitbranch.errors import ParseError, ReservedWordError, UndeclaredVariableError

bitbranch_grammar = r"""
    start: decl* stmt*

    decl: "var" IDENT ("," IDENT)* ";"

    ?stmt: IDENT ":=" expr ";"                      -> assign
         | IDENT ":=" STAR ";"                      -> havoc_star
         | "havoc" IDENT ";"                        -> havoc
         | "assume" expr ";"                        -> assume
         | "error" ";"                              -> error
         | "error" "(" ")" ";"                      -> error
         | if_cond
         | if_nondet
         | "while" "(" expr ")" block               -> while_loop

    if_cond: "if" "(" expr ")" block [else_part]
    if_nondet: "if" "(" STAR ")" block [else_part]

    ?else_part: "else" block
              | "else" if_cond                      -> else_if
              | "else" if_nondet                    -> else_if

    block: "{" stmt* "}"

    // Expressions, loosest binding first
    ?expr: ternary

    ?ternary: lor "?" ternary ":" ternary           -> ite
            | lor

    ?lor: lor OROR land                             -> binary
        | land

    ?land: land ANDAND rel                          -> binary
         | rel

    ?rel: rel (LT | LE | GT | GE | EQ | NE) bor     -> binary
        | bor

    ?bor: bor BAR bxor                              -> binary
        | bxor

    ?bxor: bxor CARET band                          -> binary
         | band

    ?band: band AMP add                             -> binary
         | add

    ?add: add (PLUS | MINUS) mul                    -> binary
        | mul

    ?mul: mul (STAR | SLASH | PERCENT) shift        -> binary
        | shift

    ?shift: shift (SHL | SHR) unary                 -> binary
          | unary

    ?unary: (MINUS | BANG | TILDE) unary            -> unary
          | atom

    ?atom: INT                                      -> int_lit
         | NEG_INT                                  -> int_lit
         | "true"                                   -> true_lit
         | "false"                                  -> false_lit
         | "WIDTH"                                  -> width
         | IDENT                                    -> var
         | "ite" "(" expr "," expr "," expr ")"     -> ite
         | "opaque" "(" expr ")"                    -> opaque
         | "(" expr ")"

    OROR: "||"
    ANDAND: "&&"
    LT: "<"
    LE: "<="
    GT: ">"
    GE: ">="
    EQ: "=="
    NE: "!="
    BAR: "|"
    CARET: "^"
    AMP: "&"
    PLUS: "+"
    MINUS: "-"
    STAR: "*"
    SLASH: "/"
    PERCENT: "%"
    SHL: "<<"
    SHR: ">>"
    BANG: "!"
    TILDE: "~"

    IDENT: /[A-Za-z_][A-Za-z0-9_]*/
    INT: /[0-9]+/
    NEG_INT: /-[0-9]+/

    %import common.WS
    %import common.CPP_COMMENT
    %import common.C_COMMENT
    %ignore WS
    %ignore CPP_COMMENT
    %ignore C_COMMENT
"""

_parser = Lark(bitbranch_grammar, start=["start", "expr"], parser="lalr")


def _identifier(token: Token) -> str:
    # keywords lex as IDENT where the parser state does not accept them
    if str(token) in RESERVED_WORDS:
        raise ReservedWordError(
            f"reserved word '{token}' cannot be used as an identifier",
            line=token.line,
            column=token.column,
        )
    return str(token)


@v_args(inline=True)
class _AstBuilder(Transformer):
    """Builds syntax tree nodes, checking identifiers against the declared scope."""

    def __init__(self, scope: frozenset[str] | None):
        super().__init__()
        self.scope = scope

    def _declared(self, token: Token) -> str:
        name = _identifier(token)
        if self.scope is not None and name not in self.scope:
            raise UndeclaredVariableError(name, line=token.line, column=token.column)
        return name

    # Expressions

    def int_lit(self, token: Token) -> Expr:
        return Lit(value=int(token))

    def true_lit(self) -> Expr:
        return BoolLit(value=True)

    def false_lit(self) -> Expr:
        return BoolLit(value=False)

    def width(self) -> Expr:
        return WidthConst()

    def var(self, token: Token) -> Expr:
        return Var(name=self._declared(token))

    def unary(self, op: Token, operand: Expr) -> Expr:
        return Unary(op=UnOp(str(op)), operand=operand)

    def binary(self, left: Expr, op: Token, right: Expr) -> Expr:
        return Binary(op=BinOp(str(op)), left=left, right=right)

    def ite(self, cond: Expr, then: Expr, orelse: Expr) -> Expr:
        return Ite(cond=cond, then=then, orelse=orelse)

    def opaque(self, inner: Expr) -> Expr:
        return Opaque(inner=inner)

    # Statements

    def assign(self, lhs: Token, rhs: Expr) -> Stmt:
        return Assign(lhs=self._declared(lhs), rhs=rhs)

    def havoc_star(self, lhs: Token, _star: Token) -> Stmt:
        return Havoc(name=self._declared(lhs))

    def havoc(self, name: Token) -> Stmt:
        return Havoc(name=self._declared(name))

    def assume(self, cond: Expr) -> Stmt:
        return Assume(cond=cond)

    def error(self) -> Stmt:
        return Error()

    def if_cond(self, cond: Expr, then: Block, orelse: Block | None) -> Stmt:
        return IfCond(cond=cond, then=then, orelse=orelse or ())

    def if_nondet(self, _star: Token, then: Block, orelse: Block | None) -> Stmt:
        return IfNondet(then=then, orelse=orelse or ())

    def else_if(self, stmt: Stmt) -> Block:
        return (stmt,)

    def while_loop(self, cond: Expr, body: Block) -> Stmt:
        return While(cond=cond, body=body)

    def block(self, *stmts: Stmt) -> Block:
        return tuple(stmts)

    def decl(self, *names: Token) -> list[str]:
        return [str(n) for n in names]

    def start(self, *items: list[str] | Stmt) -> Program:
        decls: list[str] = []
        body: list[Stmt] = []
        for item in items:
            if isinstance(item, list):
                decls.extend(item)
            else:
                body.append(item)
        return Program(decls=tuple(decls), body=number_statements(tuple(body)))


def number_statements(body: Block, start: int = 0) -> Block:
    """Tag every statement with its preorder index as origin."""
    counter = count(start)

    def walk(block: Block) -> Block:
        numbered = []
        for stmt in block:
            origin = next(counter)
            update: dict[str, object] = {"origin": origin}
            if isinstance(stmt, (IfCond, IfNondet)):
                update["then"] = walk(stmt.then)
                update["orelse"] = walk(stmt.orelse)
            elif isinstance(stmt, While):
                update["body"] = walk(stmt.body)
            numbered.append(stmt.model_copy(update=update))
        return tuple(numbered)

    return walk(body)


def _parse(text: str, start: str) -> Tree:
    try:
        return _parser.parse(text, start=start)
    except UnexpectedToken as e:
        if str(e.token) in RESERVED_WORDS:
            raise ReservedWordError(
                f"reserved word '{e.token}' cannot be used here", line=e.line, column=e.column
            ) from e
        expected = ", ".join(sorted(e.expected))
        raise ParseError(
            f"unexpected '{e.token}', expected one of: {expected}", line=e.line, column=e.column
        ) from e
    except UnexpectedInput as e:
        raise ParseError("unexpected input", line=e.line, column=e.column) from e


def _check_declarations(tree: Tree) -> frozenset[str]:
    declared: set[str] = set()
    for decl in tree.find_data("decl"):
        for token in decl.children:
            name = _identifier(token)
            if name in declared:
                raise ParseError(
                    f"variable '{name}' declared twice", line=token.line, column=token.column
                )
            declared.add(name)
    return frozenset(declared)


def parse_program(text: str) -> Program:
    """Parse program text.

    Args:
        text: Program source: `var` declarations followed by statements

    Returns:
        Program whose statements carry their preorder index as origin

    Raises:
        ParseError: On syntax errors, with line and column
        ReservedWordError: When a reserved word is used as an identifier
        UndeclaredVariableError: When an identifier is used without declaration
    """
    tree = _parse(text, "start")
    scope = _check_declarations(tree)
    try:
        return _AstBuilder(scope).transform(tree)
    except VisitError as e:
        raise e.orig_exc from e


def parse_expr(text: str, scope: Iterable[str] | None = None) -> Expr:
    """Parse a single expression; identifiers are checked against `scope` when given."""
    tree = _parse(text, "expr")
    try:
        return _AstBuilder(None if scope is None else frozenset(scope)).transform(tree)
    except VisitError as e:
        raise e.orig_exc from e
