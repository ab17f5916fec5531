"""Exception hierarchy. Every error the library raises derives from InertiaLabError."""


class InertiaLabError(Exception):
    pass


class NonSquare(InertiaLabError, ValueError):
    pass


class NotHermitian(InertiaLabError, ValueError):
    pass


class ConvergenceFailure(InertiaLabError, ArithmeticError):
    pass


class DimensionMismatch(InertiaLabError, ValueError):
    pass


class IndexOutOfBounds(InertiaLabError, IndexError):
    pass


class SingularBlock(InertiaLabError, ArithmeticError):
    pass


class ZeroVector(InertiaLabError, ValueError):
    pass


class DependentInputs(InertiaLabError, ValueError):
    pass


class DegenerateSystem(InertiaLabError, ArithmeticError):
    """The Hermitian-combination null space has no vector with (y, z) != 0."""


class NotInKernel(InertiaLabError, ValueError):
    pass


class NotPsd(InertiaLabError, ValueError):
    pass


class BadRank(InertiaLabError, ValueError):
    pass


class InvalidTarget(InertiaLabError, ValueError):
    pass


class UnknownLemma(InertiaLabError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown lemma"


class ParseError(InertiaLabError, ValueError):
    pass
