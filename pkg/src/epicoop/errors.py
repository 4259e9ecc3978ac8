"""Error taxonomy: bad user-supplied configuration vs broken internal contracts."""


class ConfigError(ValueError):
    """Raised when a configuration value or file is invalid."""


class ContractError(ValueError):
    """Raised when an operation is called with arguments that violate its contract."""
