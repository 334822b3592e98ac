"""Control-flow automaton models."""

from pydantic import BaseModel, ConfigDict

from bitbranch.domain.syntax import Stmt


class CfaEdge(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: int
    stmt: Stmt  # Assign, Havoc, Assume or Error
    target: int


class Cfa(BaseModel):
    """Control-flow automaton: locations, initial location, variables and labelled edges.

    Attributes:
        locations: Control locations, numbered in creation order
        initial: Initial location q0
        variables: Program variables
        edges: Labelled edges; every label is loop and branch free
        exit: Location reached when the program body completes
        error: Distinguished location entered by `error`, None if the program has none
    """

    model_config = ConfigDict(frozen=True)

    locations: tuple[int, ...]
    initial: int
    variables: tuple[str, ...]
    edges: tuple[CfaEdge, ...]
    exit: int
    error: int | None = None

    def outgoing(self) -> dict[int, list[CfaEdge]]:
        table: dict[int, list[CfaEdge]] = {q: [] for q in self.locations}
        for edge in self.edges:
            table[edge.source].append(edge)
        return table
