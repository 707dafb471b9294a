class ValuationError(Exception):
    pass


class SemiringMismatchError(ValuationError):
    pass


class DomainError(ValuationError):
    pass


class UnknownVariableError(ValuationError):
    pass


class EngineStateError(ValuationError):
    pass


class ModelParseError(ValuationError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
