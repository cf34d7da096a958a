"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: InputError -> 1, ContractError -> 2.
"""


class CdlpError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CdlpError, ValueError):
    """Malformed or out-of-range input (bad node ids, parse failures)."""


class ConfigError(InputError):
    """Invalid generator, pipeline or experiment configuration."""


class ContractError(CdlpError):
    """An operation was called in violation of its preconditions."""


class EmptyGraphError(ContractError):
    """Modularity is undefined on a graph without edges."""

    def __init__(self, msg="graph has no edges"):
        super().__init__(msg)


class DegenerateStageError(ContractError):
    """A pipeline stage lost every edge."""

    def __init__(self, stage):
        self.stage = stage
        super().__init__(f"stage {stage} has no edges left")


class GenerationError(CdlpError):
    """A benchmark generator could not satisfy its configuration."""

    def __init__(self, phase, msg):
        self.phase = phase
        super().__init__(f"{phase}: {msg}")
