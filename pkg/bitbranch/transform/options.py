from pydantic import BaseModel, ConfigDict, Field, model_validator

from bitbranch.config import settings
from bitbranch.domain.rules import Rule
from bitbranch.errors import UnknownRuleError
from bitbranch.rules.catalog import catalog


class TransformOptions(BaseModel):
    """Knobs of a transformation run.

    Attributes:
        enabled_rules: Rule ids allowed to fire, None for every rule of the catalog
        max_nesting: Cap on the number of rules folded at one site, None for no cap
        fresh_prefix: Prefix of generated temporaries
        rules: Catalog to draw rules from, None for the standard catalog
    """

    model_config = ConfigDict(frozen=True)

    enabled_rules: frozenset[str] | None = None
    max_nesting: int | None = Field(default=None, ge=0)
    fresh_prefix: str = Field(
        default_factory=lambda: settings.fresh_prefix, pattern=r"^[A-Za-z_][A-Za-z0-9_]*$"
    )
    rules: tuple[Rule, ...] | None = None

    @model_validator(mode="after")
    def _enabled_rules_exist(self) -> "TransformOptions":
        if self.enabled_rules is not None:
            known = {rule.id for rule in self.catalog()}
            unknown = sorted(self.enabled_rules - known)
            if unknown:
                raise UnknownRuleError(f"unknown rule(s): {', '.join(unknown)}")
        return self

    def catalog(self) -> list[Rule]:
        return catalog() if self.rules is None else list(self.rules)

    def active_rules(self) -> list[Rule]:
        """Catalog rules allowed to fire, in catalog order."""
        rules = self.catalog()
        if self.enabled_rules is None:
            return rules
        return [rule for rule in rules if rule.id in self.enabled_rules]
