"""Exception types shared across the package."""

from __future__ import annotations


class SemcomError(Exception):
    """Base class for all errors raised by this package."""


class UnknownClass(SemcomError):
    """A class name is not part of the run vocabulary."""

    def __init__(self, class_name: str):
        super().__init__(f"class {class_name!r} is not in the vocabulary")
        self.class_name = class_name


class EmptyTruth(SemcomError):
    """The ground-truth vector has zero norm; semantic error is undefined."""


class ZeroSource(SemcomError):
    """Source size is zero or negative; gain is undefined."""


class EmptySeries(SemcomError):
    """A cumulative average was requested for an empty series."""


class EmptyDataset(SemcomError):
    """An evaluation was requested on a dataset with no images."""


class EmptyConfigSet(SemcomError):
    """Selection was requested over an empty set of codec configurations."""


class ParseError(SemcomError):
    """A caption payload does not conform to the caption grammar."""


class SchemaError(SemcomError):
    """An input document does not match the expected schema.

    ``path`` is a JSON-path-style locator for the offending element.
    """

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class UnknownCategory(SemcomError):
    """An annotation references a category id that is not declared."""


class BridgeError(SemcomError):
    """A model-bridge request failed; carries the protocol error envelope."""

    def __init__(self, code: int, message: str):
        super().__init__(f"bridge error {code}: {message}")
        self.code = code
