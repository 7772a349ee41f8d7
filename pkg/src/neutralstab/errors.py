"""Exception hierarchy shared by the library and the command line."""


class NeutralStabError(Exception):
    """Base class for every error raised by :mod:`neutralstab`."""


class DomainError(NeutralStabError, ValueError):
    """An operation was applied outside its mathematical domain.

    Raised for mismatched variable tags or coefficient domains, zero
    polynomials where a nonzero one is required, and similar misuse.
    """


class SingularPencilError(NeutralStabError):
    """``det(I - sum B_k)`` vanishes, so the system is not admissible."""


class DegenerateSystemError(NeutralStabError):
    """Both halves of a real/imaginary split are identically zero."""


class DegenerateViewError(DomainError):
    """A bivariate resultant was requested in a view with no leading coefficient."""


class ConfigError(NeutralStabError, ValueError):
    """Invalid user configuration (sweep path, simulation grid, system file)."""


class RootCountMismatch(AssertionError):
    """Sturm-sequence isolation and the discrimination-sequence count disagree.

    This signals an arithmetic bug, never a property of the input.
    """
