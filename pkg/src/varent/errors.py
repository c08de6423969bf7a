"""Exception types shared across the package."""


class VarentError(Exception):
    """Base class for all package errors."""


class SizeError(VarentError, ValueError):
    """Register size out of range or mismatched dimensions."""


class QubitIndexError(VarentError, IndexError):
    """Qubit index out of range, or repeated where distinct qubits are required."""


class ConfigurationError(VarentError, ValueError):
    """Invalid circuit, sweep or sampling configuration."""


class ConsistencyError(VarentError, ArithmeticError):
    """A computed quantity left its admissible range by more than float noise."""
