from typing import Optional, Sequence, Union


class HoweError(Exception):
    """Base class for all errors raised by the library"""


class FieldError(HoweError, ValueError):
    """Invalid prime, reducible modulus or elements from different fields"""


class DegenerateParameterError(HoweError, ValueError):
    """A parameter hits a forbidden value (a pole, a singular model, a coincidence)"""


class NotSquarefreeError(DegenerateParameterError):
    """The defining polynomial of a hyperelliptic model has a repeated root"""


class EnumerationBoundError(HoweError, ValueError):
    """An exhaustive enumeration was requested above its configured prime bound"""


class ConfigurationError(HoweError, ValueError):
    """An environment variable or option could not be interpreted"""


class CertificateFormatError(HoweError, ValueError):
    """A certificate document does not match the schema"""

    def __init__(self, message: str, location: Optional[Sequence[Union[str, int]]] = None):
        self.location = tuple(location or ())
        if self.location:
            where = ".".join(str(part) for part in self.location)
            message = f"{message} (at {where})"
        super().__init__(message)
