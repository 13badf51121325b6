"""Exception hierarchy shared by every module of the package."""


class LatticeRamseyError(Exception):
    """Base class for all errors raised by the package."""


class InvalidParamsError(LatticeRamseyError, ValueError):
    pass


class SizeLimitError(LatticeRamseyError):
    pass


class ElementIndexError(LatticeRamseyError, IndexError):
    pass


class MapShapeError(LatticeRamseyError, ValueError):
    """Images array does not fit the declared domain/codomain, or maps are not composable."""


class HJFormError(LatticeRamseyError, ValueError):
    pass


class SystemMismatchError(LatticeRamseyError, ValueError):
    """A homothety system was applied to lattices it is not defined on."""


class NotAdmissibleError(LatticeRamseyError, ValueError):
    pass


class ColoringError(LatticeRamseyError, ValueError):
    pass


class SearchBudgetExceeded(LatticeRamseyError):
    def __init__(self, message, nodes=None, covered=None):
        super().__init__(message)
        self.nodes = nodes
        # fraction of the coloring space examined before giving up, when known
        self.covered = covered
