"""Typed error hierarchy shared by parsers, engine, service and CLI.

Every error carries a stable machine-readable ``code`` and, where it makes
sense, a 1-based (row, column) location inside the offending file. The
service serializes these as ``{error_code, message, location?}`` payloads.
"""


class EngineError(Exception):
    code = "ENGINE_ERROR"
    http_status = 400

    def __init__(self, message: str, *, row: int | None = None, column: int | None = None):
        super().__init__(message)
        self.message = message
        self.row = row
        self.column = column

    @property
    def location(self) -> dict | None:
        if self.row is None and self.column is None:
            return None
        loc = {}
        if self.row is not None:
            loc["row"] = self.row
        if self.column is not None:
            loc["column"] = self.column
        return loc

    def payload(self) -> dict:
        out = {"error_code": self.code, "message": self.message}
        loc = self.location
        if loc is not None:
            out["location"] = loc
        return out

    def __str__(self) -> str:
        loc = self.location
        if not loc:
            return self.message
        where = ", ".join(f"{k} {v}" for k, v in loc.items())
        return f"{self.message} ({where})"


class ParseError(EngineError):
    """Base for dataset parsing failures; parsing is total over this family."""

    code = "PARSE_ERROR"


class NoDelimiter(ParseError):
    code = "NO_DELIMITER"


class MissingHeader(ParseError):
    code = "MISSING_HEADER"


class BadHeader(ParseError):
    code = "BAD_HEADER"


class BadNumber(ParseError):
    code = "BAD_NUMBER"


class EmptyField(ParseError):
    code = "EMPTY_FIELD"


class DuplicateGene(ParseError):
    code = "DUPLICATE_GENE"


class RaggedRow(ParseError):
    code = "RAGGED_ROW"


class EmptyDataset(ParseError):
    code = "EMPTY_DATASET"


class BadEncoding(ParseError):
    code = "BAD_ENCODING"


class BadParameter(EngineError):
    code = "BAD_PARAMETER"


class UnknownCluster(EngineError):
    code = "UNKNOWN_CLUSTER"
    http_status = 404


class UnknownGene(EngineError):
    code = "UNKNOWN_GENE"
    http_status = 404


class UnknownDisease(EngineError):
    code = "UNKNOWN_DISEASE"
    http_status = 404


class UnknownSession(EngineError):
    code = "UNKNOWN_SESSION"
    http_status = 404


class NotLoaded(EngineError):
    code = "NOT_LOADED"
    http_status = 409


class PayloadTooLarge(EngineError):
    code = "PAYLOAD_TOO_LARGE"
    http_status = 413


class CorruptSnapshot(EngineError):
    code = "CORRUPT_SNAPSHOT"


class VersionMismatch(EngineError):
    code = "VERSION_MISMATCH"


class SnapshotIOError(EngineError):
    code = "IO_ERROR"
