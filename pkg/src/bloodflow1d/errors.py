"""Exception types shared across the solver."""


class ModelError(Exception):
    """Base class for all solver errors."""


class ParameterError(ModelError):
    """Invalid or inconsistent wall/fluid parameters."""


class DomainError(ModelError):
    """Function argument outside its physical domain (e.g. non-positive area)."""


class PositivityError(ModelError):
    """Cross-sectional area lost positivity during a time step."""

    def __init__(self, cell: int, stage: int, value: float):
        self.cell = cell
        self.stage = stage
        self.value = value
        super().__init__(
            f"non-positive area A={value:.6e} in cell {cell} at RK stage {stage}"
        )


class ConvergenceError(ModelError):
    """An iterative solve (Newton, quadrature) failed to reach tolerance."""
