"""Exception types shared across the package.

The CLI maps every :class:`SelrulesError` to exit code 2 (data or contract
error); argument problems are reported separately with exit code 1.
"""


class SelrulesError(Exception):
    """Base class for all data and contract errors raised by selrules."""


class MalformedInputError(SelrulesError, ValueError):
    """An input file does not follow its documented format."""


class EmptyDatabaseError(SelrulesError, ValueError):
    """Support is undefined for a database without transactions."""


class DictionaryMismatchError(SelrulesError, ValueError):
    """An itemset references an item unknown to the dictionary."""


class TreeStateError(SelrulesError, RuntimeError):
    """A counting tree was used in the wrong phase (count after freeze, query before)."""


class NotCountedError(SelrulesError, LookupError):
    """The queried itemset has no counter in the tree."""


class ResourceExhaustedError(SelrulesError, RuntimeError):
    """Mining would generate more candidates than the configured cap."""


class InconsistentInputError(SelrulesError, ValueError):
    """A frequent itemset collection violates downward closure."""


class TemplateSyntaxError(SelrulesError, ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class InsufficientPoolError(SelrulesError, ValueError):
    """A sample larger than the itemset pool was requested."""
