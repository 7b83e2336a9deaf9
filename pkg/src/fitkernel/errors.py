"""Typed errors surfaced through the public API and the CLI."""


class FitkernelError(Exception):
    """Base class for errors raised by this package."""


class UnsupportedFieldError(FitkernelError):
    """A component value field has no single prime above p.

    All valuation-dependent arithmetic (conductors, expansions, ideal
    lattices) requires a unique prime above the working prime; anything
    else is refused rather than silently approximated.
    """


class CatalogError(FitkernelError):
    """Requested group is not in the finite-group catalog."""


class SchemaError(FitkernelError):
    """CLI input does not match the published JSON schema."""
