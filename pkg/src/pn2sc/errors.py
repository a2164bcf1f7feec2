"""Exception hierarchy shared by the model, engine and I/O layers."""


class Pn2scError(Exception):
    """Base class for every error raised by this package."""


class ModelError(Pn2scError):
    """A mutation or query would break a model invariant."""


class MissingNodeError(ModelError, KeyError):
    def __init__(self, node_id, kind="node"):
        self.node_id = node_id
        super().__init__(f"unknown {kind} id {node_id!r}")

    def __str__(self):
        return self.args[0]


class BipartitenessError(ModelError):
    """An arc would connect two places or two transitions."""


class DuplicateArcError(ModelError):
    pass


class DuplicateIdError(ModelError):
    pass


class MalformedModelError(ModelError):
    """Statechart containment is not a forest, or a reference dangles."""


class PreconditionError(Pn2scError):
    pass


class StaleMatchError(Pn2scError):
    """A rule match no longer holds against the current state."""


class GeneratorSpecError(Pn2scError):
    pass


class FormatError(Pn2scError):
    """Base class for document decoding problems."""


class DocumentSyntaxError(FormatError):
    def __init__(self, msg, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{msg} (line {line}, column {column})")


class SchemaError(FormatError):
    pass


class DanglingEndpointError(FormatError):
    pass
