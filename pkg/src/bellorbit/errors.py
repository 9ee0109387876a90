"""Exception hierarchy.

Every error carries a short ``code`` naming the violated invariant so the CLI
can print it verbatim and map it to an exit status.
"""


class BellOrbitError(Exception):
    code = "BellOrbitError"

    def __str__(self):
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class InvalidDimension(BellOrbitError, ValueError):
    code = "InvalidDimension"


class NonFinite(BellOrbitError, ValueError):
    code = "NonFinite"


class NotHermitian(BellOrbitError, ValueError):
    code = "NotHermitian"


class EigenFailure(BellOrbitError, RuntimeError):
    code = "EigenFailure"


class TraceNotOne(BellOrbitError, ValueError):
    code = "TraceNotOne"


class NotPositive(BellOrbitError, ValueError):
    code = "NotPositive"


class NotUnitVector(BellOrbitError, ValueError):
    code = "NotUnitVector"


class OutOfRange(BellOrbitError, ValueError):
    code = "OutOfRange"


class NotDetectable(BellOrbitError):
    code = "NotDetectable"


class EmptyGrid(BellOrbitError, ValueError):
    code = "EmptyGrid"


class UnknownFamily(BellOrbitError, ValueError):
    code = "UnknownFamily"


class DocumentError(BellOrbitError, ValueError):
    code = "DocumentError"
