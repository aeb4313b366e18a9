class TDPairError(ValueError):
    """Base class for tridiagonal system failures."""


class ContradictionError(TDPairError):
    """Eigenvalue sequences admit no common beta, gamma or rho."""


class InternalInconsistencyError(TDPairError):
    """A structural fact that must hold for a valid system failed."""


class InadmissibleParametersError(TDPairError):
    pass


class NotLeonardError(TDPairError):
    def __init__(self, message: str, reason=None):
        super().__init__(message)
        self.reason = reason


class NotKrawtchoukError(TDPairError):
    pass
