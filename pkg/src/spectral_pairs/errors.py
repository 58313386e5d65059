class DomainError(ValueError):
    """Well-formed input that falls outside what the toolkit can decide or build."""


class UnpackableFactorization(DomainError):
    pass


class OutsideTable(DomainError):
    pass
