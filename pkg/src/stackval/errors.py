"""Exception types shared by all solver modules."""


class StackvalError(Exception):
    """Base class for library errors."""


class ArenaError(StackvalError):
    """An arena, lasso or strategy violates a structural invariant."""


class ArenaParseError(ArenaError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(StackvalError):
    """An enumeration or construction outgrew its configured cap.

    ``required`` is the size that would have been needed when it is known
    (it may be a lower bound), ``budget`` the cap in force.
    """

    def __init__(self, resource, budget, required=None):
        self.resource = resource
        self.budget = budget
        self.required = required
        msg = f"{resource}: budget {budget} exceeded"
        if required is not None:
            msg += f" (needs at least {required})"
        super().__init__(msg)

    def report(self):
        return {"resource": self.resource, "budget": self.budget,
                "required": self.required}
