"""Exceptions raised by the workbench. Every error carries the offending witness."""


class WorkbenchError(Exception):
    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness

    def __reduce__(self):
        # keep the witness when errors cross a worker pool
        return (self.__class__, (str(self), self.witness))


class MalformedTable(WorkbenchError, ValueError):
    pass


class NotAssociative(WorkbenchError, ValueError):
    pass


class NotInverse(WorkbenchError, ValueError):
    pass


class NotIdempotent(WorkbenchError, ValueError):
    pass


class NotMonoid(WorkbenchError, ValueError):
    pass


class SizeCapExceeded(WorkbenchError, ValueError):
    pass


class LinkingIncompatible(WorkbenchError, ValueError):
    pass


class NotSemilatticeOfGroups(WorkbenchError, ValueError):
    pass


class NotBelowDomain(WorkbenchError, ValueError):
    pass


class NotInductive(WorkbenchError, ValueError):
    pass


class NotHeapPreserving(WorkbenchError, ValueError):
    pass


class AlphabetMismatch(WorkbenchError, ValueError):
    pass


class WindowExceeded(WorkbenchError, ValueError):
    pass


class NotSuffixPreserving(WorkbenchError, ValueError):
    pass


class ClosureViolation(WorkbenchError, RuntimeError):
    pass


class DiagnosticFailure(WorkbenchError, AssertionError):
    pass


class SearchBudgetExceeded(WorkbenchError, RuntimeError):
    def __init__(self, message: str, visited: int, found: int):
        super().__init__(message, witness={"visited": visited, "found": found})
        self.visited = visited
        self.found = found

    def __reduce__(self):
        return (self.__class__, (str(self), self.visited, self.found))


class ParseError(WorkbenchError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif column is not None:
            where = f" (position {column})"
        super().__init__(f"{message}{where}", witness={"line": line, "column": column})
        self.message = message
        self.line = line
        self.column = column

    def __reduce__(self):
        return (self.__class__, (self.message, self.line, self.column))
