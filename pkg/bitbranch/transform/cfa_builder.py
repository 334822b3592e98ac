"""Control-flow automaton construction."""

from loguru import logger

from bitbranch.domain.cfa import Cfa, CfaEdge
from bitbranch.domain.syntax import (
    Assign,
    Assume,
    Block,
    BoolLit,
    Error,
    Havoc,
    IfCond,
    IfNondet,
    Program,
    Stmt,
    Unary,
    UnOp,
    While,
)
from bitbranch.errors import NotNormalizedError

SKIP = Assume(cond=BoolLit(value=True))


class CfaBuilder:
    """Allocates locations and edges while walking a normalised program."""

    def __init__(self, variables: tuple[str, ...]):
        self.variables = variables
        self.locations: list[int] = []
        self.edges: list[CfaEdge] = []
        self.error: int | None = None

    def fresh(self) -> int:
        q = len(self.locations)
        self.locations.append(q)
        return q

    def error_location(self) -> int:
        if self.error is None:
            self.error = self.fresh()
        return self.error

    def edge(self, source: int, stmt: Stmt, target: int) -> None:
        self.edges.append(CfaEdge(source=source, stmt=stmt, target=target))

    def block(self, stmts: Block, src: int, dst: int | None = None) -> int:
        """Connect `stmts` from `src`; returns the location where the block ends.

        When `dst` is given the block ends there, otherwise at a fresh location.
        """
        if not stmts:
            if dst is not None and dst != src:
                self.edge(src, SKIP, dst)
                return dst
            return src
        current = src
        for i, stmt in enumerate(stmts):
            target = dst if i == len(stmts) - 1 else None
            current = self.stmt(stmt, current, target)
        return current

    def stmt(self, stmt: Stmt, src: int, dst: int | None) -> int:
        match stmt:
            case Assign() | Havoc() | Assume():
                target = self.fresh() if dst is None else dst
                self.edge(src, stmt, target)
                return target
            case Error():
                self.edge(src, stmt, self.error_location())
                # nothing follows error; the continuation location is unreachable
                return self.fresh() if dst is None else dst
            case IfNondet(then=then, orelse=orelse):
                join = self.fresh() if dst is None else dst
                self.branch(then, src, join)
                self.branch(orelse, src, join)
                return join
            case While(cond=cond, body=body, origin=origin, observable=observable):
                # the loop head must be `src` itself so the back edge returns to it
                head = src
                exit_to = self.fresh() if dst is None else dst
                entry_guard = Assume(cond=cond, origin=origin, observable=observable)
                exit_guard = Assume(
                    cond=Unary(op=UnOp.LOG_NOT, operand=cond), origin=origin, observable=observable
                )
                if body:
                    entry = self.fresh()
                    self.edge(head, entry_guard, entry)
                    self.block(body, entry, head)
                else:
                    self.edge(head, entry_guard, head)
                self.edge(head, exit_guard, exit_to)
                return exit_to
            case IfCond():
                raise NotNormalizedError(
                    f"conditional at @{stmt.origin} must be branch-normalised before building a CFA"
                )
        raise TypeError(f"not a statement: {stmt!r}")

    def branch(self, stmts: Block, src: int, join: int) -> None:
        # a loop cannot share its head with the sibling branch
        if stmts and isinstance(stmts[0], While):
            head = self.fresh()
            self.edge(src, SKIP, head)
            src = head
        self.block(stmts, src, join)


def build_cfa(p: Program) -> Cfa:
    """Control-flow automaton of a branch-normalised program.

    Args:
        p: Program without IfCond statements

    Returns:
        Cfa whose edges are labelled with Assign, Havoc, Assume or Error statements

    Raises:
        NotNormalizedError: If `p` still contains an IfCond
    """
    builder = CfaBuilder(p.decls)
    initial = builder.fresh()
    exit_location = builder.block(p.body, initial)
    logger.debug(f"Built CFA with {len(builder.locations)} locations, {len(builder.edges)} edges")
    return Cfa(
        locations=tuple(builder.locations),
        initial=initial,
        variables=p.decls,
        edges=tuple(builder.edges),
        exit=exit_location,
        error=builder.error,
    )
