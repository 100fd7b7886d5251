"""Exception hierarchy shared across the package."""


class TamagawaError(Exception):
    """Base class for all package-specific errors."""


class InputError(TamagawaError, ValueError):
    """Invalid mathematical input: rank deficiency, ill-defined group data,
    malformed scenario files."""


class BudgetExceededError(TamagawaError):
    """An element-wise enumeration would exceed the configured budget.

    Raised instead of silently truncating; exit code 4 at the CLI."""


class UnsupportedRegimeError(TamagawaError):
    """The requested computation falls outside the supported regimes."""


class ConsistencyError(TamagawaError):
    """Exact arithmetic produced a value contradicting the scenario's own
    data (e.g. a non-integral class number)."""
