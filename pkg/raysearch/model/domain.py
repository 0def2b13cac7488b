"""
Range checks shared by all parts of the library.

A search instance is described by the number of paths ``w`` meeting at the
origin and the number of robots ``lam`` exploring them. Paths are indexed
``0, ..., w-1``, robots are numbered ``1, ..., lam``.
"""
import numbers


class DomainError(ValueError):
    """This exception is raised when an argument lies outside of the domain of
    the respective operation, e.g. a robot count exceeding the number of
    paths."""


def check_path_count(w, minimum=2):
    """Check the number of paths.

    Args:
        w: The number of paths
        minimum: The smallest admissible number of paths (default: 2)

    Raises:
        DomainError: if ``w`` is not an integer of at least ``minimum``
    """
    if not isinstance(w, numbers.Integral) or w < minimum:
        raise DomainError(
            "The number of paths must be an integer >= %d, got %r"
            % (minimum, w)
        )


def check_robot_count(w, lam):
    """Check the number of robots against the number of paths.

    Raises:
        DomainError: if ``lam`` is not an integer in ``[1, w]``
    """
    if not isinstance(lam, numbers.Integral) or not 1 <= lam <= w:
        raise DomainError(
            "The number of robots must be an integer in [1, %d], got %r"
            % (w, lam)
        )


def check_positive(name, value):
    """Check that a real-valued parameter is strictly positive.

    Raises:
        DomainError: if ``value`` is not positive
    """
    if not value > 0:
        raise DomainError("%s must be positive, got %r" % (name, value))
