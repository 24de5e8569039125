import os
import warnings


class UnrollingWarning(UserWarning):
    """Warnings from the unrolling workbench."""

    pass


class UnrollingError(Exception):
    """Exception class for errors in unrolling"""

    pass


class LawViolation(UnrollingError):
    """A category or functor description which breaks the category laws"""

    pass


class MissingComposite(LawViolation):
    """A composable pair of arrows has no entry in the composition table"""

    def __init__(self, g, f):
        self.g = g
        self.f = f
        super().__init__(f"missing composite for the composable pair ({g}, {f})")


class InvalidComposite(LawViolation):
    """A composition entry is defined for a non composable pair, or is ill-typed"""

    def __init__(self, g, f, message):
        self.g = g
        self.f = f
        super().__init__(f"invalid composite for ({g}, {f}): {message}")


class NonAssociative(LawViolation):
    """Composition is not associative on a composable triple"""

    def __init__(self, h, g, f):
        self.h = h
        self.g = g
        self.f = f
        super().__init__(f"composition is not associative on ({h}, {g}, {f})")


class IdentityLawViolation(LawViolation):
    """An identity arrow does not act as a unit"""

    def __init__(self, arrow, identity):
        self.arrow = arrow
        self.identity = identity
        super().__init__(f"identity '{identity}' is not a unit for '{arrow}'")


class NotComposable(UnrollingError):
    """Two arrows or words which can not be composed"""

    def __init__(self, g, f):
        self.g = g
        self.f = f
        super().__init__(f"'{g}' can not be composed after '{f}'")


class BoundExceeded(UnrollingError):
    """A computation left the configured search bound"""

    pass


class PresentationInvalid(UnrollingError):
    """An amalgam presentation fails its injectivity or functoriality checks"""

    pass


class NegativeDegree(UnrollingError):
    """The unrolled degree formula produced a negative value"""

    def __init__(self, obj, value):
        self.obj = obj
        self.value = value
        super().__init__(f"object '{obj}' gets the negative degree {value}")


class StructureViolation(UnrollingError):
    """The induced Reedy structure fails its axioms"""

    def __init__(self, morphism, message):
        self.morphism = morphism
        super().__init__(f"{message} (witness: '{morphism}')")


class SizeCapExceeded(UnrollingError):
    """An exhaustive search space is bigger than the configured cap"""

    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"search space of size {size} exceeds the cap of {cap}")


class NoLift(UnrollingError):
    """A lifting problem which should be solvable has no solution"""

    pass


class NonFunctorialDiagram(UnrollingError):
    """A diagram does not respect identities or composition"""

    pass


class NotAGroup(UnrollingError):
    """A multiplication table fails the group axioms"""

    pass


class FunctorError(LawViolation):
    """An object and arrow map which is not a functor"""

    pass


class ConeError(UnrollingError):
    """A cone over a diagram which does not commute"""

    pass


class FormatError(UnrollingError):
    """A malformed document"""

    pass


class ConfigurationError(UnrollingError):
    """An invalid configuration value"""

    pass


class FormatMetadata:
    """
    :py:class:`FormatMetadata` contains metadata associated with one document
    format. The following fields are directly accessible:

    :param str name: name of the format
    :param str extension: extension associated with the format
    :param str description: extended user-facing description of the format
    :param list sections: section keywords used by the format
    :param list headers: header keys referencing other documents
    """

    def __init__(self, name, extension, description, sections, headers=()):
        self.name = name
        self.extension = extension
        self.description = description
        self.sections = list(sections)
        self.headers = list(headers)

    def __repr__(self):
        return f"""
FormatMetadata for {self.name}
-------------------{"-" * len(self.name)}
{self.description}

name      = {self.name}
extension = {self.extension}
sections  = {", ".join(self.sections)}
headers   = {", ".join(self.headers) or "-"}
"""


_FORMATS = [
    FormatMetadata(
        "Category",
        ".cat",
        "finite category given by its total composition table",
        ["objects", "arrows", "identities", "compose"],
    ),
    FormatMetadata(
        "Functor",
        ".fun",
        "functor between two finite categories",
        ["map-objects", "map-arrows"],
        ["source", "target"],
    ),
    FormatMetadata(
        "Reedy",
        ".reedy",
        "degree function and plus/minus classes over a finite category",
        ["degrees", "plus", "minus"],
        ["category"],
    ),
    FormatMetadata(
        "Presentation",
        ".pres",
        "amalgam presentation c: R0 -> R, with optional Reedy annotations",
        [],
        ["R", "R0", "c", "reedy", "reedy0"],
    ),
    FormatMetadata(
        "Diagram",
        ".diag",
        "contravariant diagram of finite categories over a finite shape",
        ["values", "actions"],
        ["shape"],
    ),
]


def formats_list():
    """
    Get the list of document formats known by unrolling, as well as all
    associated metadata.

    :rtype: list(FormatMetadata)
    """
    return list(_FORMATS)


def guess_format(path):
    """
    Get the format that unrolling would use to read a document at the given
    ``path``. The format is guessed from the path extension, and ``""`` is
    returned for unknown extensions.
    """
    extension = os.path.splitext(path)[1]
    for metadata in _FORMATS:
        if metadata.extension == extension:
            return metadata.name
    return ""


# Store a reference to the current warning callback
_CURRENT_CALLBACK = None


def set_warnings_callback(function):
    """
    Call ``function`` on every warning event. The callback should take a string
    message and return nothing.

    By default, warnings are send to python ``warnings`` module.
    """

    def callback(message):
        try:
            function(message)
        except Exception as e:
            message = f"exception raised in warning callback: {e}"
            warnings.warn(message, UnrollingWarning)

    global _CURRENT_CALLBACK
    _CURRENT_CALLBACK = callback


def _warn(message):
    """Send ``message`` to the current warning callback."""
    if _CURRENT_CALLBACK is None:
        _set_default_warning_callback()
    _CURRENT_CALLBACK(message)


def _set_default_warning_callback():
    set_warnings_callback(
        # stacklevel=4 gets through the lambda => adaptor => _warn => caller
        lambda message: warnings.warn(message, UnrollingWarning, stacklevel=4)
    )


def add_configuration(path):
    """
    Read configuration data from the file at ``path``.

    By default, unrolling reads configuration from any file named
    ``.unrollingrc`` in the current directory or any parent directory. This
    function can be used to add data from another configuration file.

    This function will fail if there is no file at ``path``, or if the file is
    incorrectly formatted. Data from the new configuration file will overwrite
    any existing data, except for values set in the environment.
    """
    from ._config import _get_configuration

    configuration = _get_configuration()
    configuration.add_file(path)
    configuration.add_environment(os.environ)


def reset_configuration():
    """
    Forget the cached configuration; it is read again from the defaults,
    ``.unrollingrc`` files and the environment on next use.
    """
    from ._config import _get_configuration

    _get_configuration.reset()
