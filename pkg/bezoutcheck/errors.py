class Failure(Exception):
    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return self.message


class BasisMismatchError(Failure):
    pass


class UnsupportedBasisError(Failure):
    pass


class PreconditionError(Failure):
    pass


class SingularDenominatorError(Failure):
    pass


class BetaDomainError(Failure):
    pass


class NonConvergenceError(Failure):
    pass


class IntegralityError(Failure):
    pass


class BothZeroError(Failure):
    pass


class ConfigError(Failure):
    pass
