"""Exception hierarchy shared by the engine, statistics, and CLI."""


class WealthsimError(Exception):
    """Base class for all package errors."""


class ConfigError(WealthsimError):
    """Invalid experiment configuration or sweep specification."""


class SimulationError(WealthsimError):
    """A run failed while evolving state."""


class DegenerateMarketError(SimulationError):
    """The market-clearing price is undefined (zero aggregate demand or supply)."""

    def __init__(self, message: str, period: int | None = None):
        super().__init__(message)
        self.period = period


class ContractError(SimulationError):
    """An internal invariant was violated; indicates a programming error."""


class DomainError(WealthsimError):
    """A statistical routine was called with out-of-domain data."""


class DegenerateSampleError(DomainError):
    """Sample has no variation; the requested fit is undefined."""
