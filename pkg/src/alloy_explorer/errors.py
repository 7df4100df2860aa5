"""Exception types shared across the engine.

Every error raised by the library derives from :class:`ExplorerError` so CLI
and service layers can map failures to exit codes / HTTP responses uniformly.
"""

from __future__ import annotations


class ExplorerError(Exception):
    """Base class for all engine errors."""


# ---- dataset ingestion / preprocessing ----

class MissingColumn(ExplorerError):
    def __init__(self, name: str):
        super().__init__(f"column {name!r} required by the schema is absent from the file")
        self.name = name


class UnparseableCell(ExplorerError):
    def __init__(self, row: int, column: str, text: str = ""):
        super().__init__(f"cell at data row {row}, column {column!r} is not numeric: {text!r}")
        self.row = row
        self.column = column


class EmptyFile(ExplorerError):
    pass


class InvalidCount(ExplorerError):
    pass


class EmptyDataset(ExplorerError):
    pass


class ColumnMismatch(ExplorerError):
    pass


# ---- filtering ----

class UnknownColumn(ExplorerError):
    def __init__(self, name: str):
        super().__init__(f"no column named {name!r}")
        self.name = name


class NegativeTolerance(ExplorerError):
    pass


# ---- neighbour recommendation ----

class EmptyBounds(ExplorerError):
    pass


class EmptyTarget(ExplorerError):
    pass


class DimensionMismatch(ExplorerError):
    pass


# ---- surrogate model ----

class NonFiniteInput(ExplorerError):
    pass


class ShapeMismatch(ExplorerError):
    pass


class NonFiniteLoss(ExplorerError):
    def __init__(self, epoch: int):
        super().__init__(f"training loss became non-finite at epoch {epoch}")
        self.epoch = epoch


class EmptyEvaluationSet(ExplorerError):
    pass


class UnknownAxis(ExplorerError):
    def __init__(self, name: str):
        super().__init__(f"{name!r} is not a surrogate input axis")
        self.name = name


class TooFewSamples(ExplorerError):
    pass


class CorruptModelFile(ExplorerError):
    pass


class VersionMismatch(ExplorerError):
    pass


# ---- sessions / service ----

class UnknownDataset(ExplorerError):
    def __init__(self, name: str):
        super().__init__(f"no dataset registered under {name!r}")
        self.name = name


class UnknownSession(ExplorerError):
    def __init__(self, session_id: str):
        super().__init__(f"no session with id {session_id!r}")
        self.session_id = session_id


class UnknownRow(ExplorerError):
    def __init__(self, row_id: int):
        super().__init__(f"row id {row_id} is not part of this session")
        self.row_id = row_id


class ModelNotLoaded(ExplorerError):
    pass


class PortInUse(ExplorerError):
    def __init__(self, port: int):
        super().__init__(f"port {port} is already in use")
        self.port = port
