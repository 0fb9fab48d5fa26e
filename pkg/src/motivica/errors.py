"""Exception hierarchy.  Class names are part of the CLI contract."""


class MotivicaError(Exception):
    """Base class.  ``exit_code`` is what the CLI returns."""

    exit_code = 2


class InputError(MotivicaError):
    exit_code = 1


class SchemaError(InputError):
    pass


class ParseError(InputError):
    pass


class ValidationError(InputError):
    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class UnknownFixture(InputError):
    pass


class NonTateClass(MotivicaError):
    pass


class NotRegularAtInfinity(MotivicaError):
    pass


class ReconstructionFailed(MotivicaError):
    pass


class NonDivisible(MotivicaError):
    pass


class MissingStratum(MotivicaError):
    pass


class MissingCover(MotivicaError):
    pass


class MissingCounts(MotivicaError):
    pass


class PoleAtOne(MotivicaError):
    pass


class NotMassless(MotivicaError):
    pass


class NonIntegralExpansion(MotivicaError):
    pass


class Unsupported(MotivicaError):
    pass
