"""Exception hierarchy shared by the engine and the command line."""


class SuperdescentError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SuperdescentError, ValueError):
    """Malformed input: bad algebra spec, bad parameters, wrong level."""


class LevelMismatch(InputError):
    pass


class AssocViolation(InputError):
    def __init__(self, i, j, k, left=None, right=None):
        self.triple = (i, j, k)
        msg = f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})"
        if left is not None:
            msg += f": {left} vs {right}"
        super().__init__(msg)


class NotNilpotent(InputError):
    def __init__(self, chain):
        self.chain = chain
        super().__init__("algebra is not nilpotent; non-vanishing product chain "
                         + " * ".join(f"e{i}" for i in chain))


class SizeBoundExceeded(SuperdescentError):
    def __init__(self, what, size, bound):
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: {size} exceeds size bound {bound}")


class NoLanding(SuperdescentError):
    """Norm of a twisted class has no conjugate at the target level."""


class AmbiguousLanding(SuperdescentError):
    """Norm of a twisted class lands in more than one target class."""


class NotTwistedClassFunction(SuperdescentError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"function is not constant on a twisted class: {witness}")


class NotSuperclassFunction(SuperdescentError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"function is not constant on a superclass: {witness}")


class VerificationError(SuperdescentError):
    """An internal consistency check failed."""
