from .misc import ConfigurationError


class Frozen(object):
    # Used to prevent modifying objects after construction. Subclasses set
    # their attributes in __init__ and then call self._freeze().
    __frozen = False

    def _freeze(self):
        self.__frozen = True

    def __setattr__(self, key, value):
        if self.__frozen:
            raise TypeError(
                f"Can not modify attributes of this {self.__class__.__name__}"
            )
        object.__setattr__(self, key, value)

    def __delattr__(self, key):
        if self.__frozen:
            raise TypeError(
                f"Can not remove attributes of this {self.__class__.__name__}"
            )
        object.__delattr__(self, key)


def tuple_id(parts):
    """
    Build the identifier of a family of identifiers. Identifiers built this way
    are parenthesized, so nested families stay unambiguous.
    """
    return "(" + ",".join(parts) + ")"


def _check_bound(name, value):
    """Check that a search bound is a non-negative integer"""
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigurationError(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise ConfigurationError(f"{name} must be non-negative, got {value}")
    return value
