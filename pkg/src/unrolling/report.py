import json

SCHEMA = "unrolling.report/1"


class Verdict:
    """
    The outcome of a single check: its ``name``, whether it ``passed``, the
    ``witnesses`` (identifiers of offending objects, arrows, ...) and a free
    form ``detail`` message.
    """

    def __init__(self, name, passed, witnesses=(), detail=""):
        self.name = name
        self.passed = bool(passed)
        self.witnesses = sorted(str(w) for w in witnesses)
        self.detail = detail

    def as_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "witnesses": self.witnesses,
            "detail": self.detail,
        }

    def __repr__(self):
        status = "pass" if self.passed else "FAIL"
        return f"Verdict {self.name}: {status}"


class Report:
    """
    A :py:class:`Report` collects the verdicts of a group of checks. It passes
    when every verdict passes; an empty report passes.

    Categories exhibiting a failure can be attached with :py:func:`attach`, to
    be written next to the report.
    """

    def __init__(self, title):
        self.title = title
        self.verdicts = []
        self.attachments = {}

    def add(self, name, passed, witnesses=(), detail=""):
        """Add a new :py:class:`Verdict` to this report, and return it"""
        verdict = Verdict(name, passed, witnesses, detail)
        self.verdicts.append(verdict)
        return verdict

    def attach(self, name, category):
        self.attachments[name] = category

    def extend(self, other, prefix=None):
        """
        Add all verdicts and attachments of ``other`` to this report. When
        ``prefix`` is given, verdict names become ``prefix/name``.
        """
        for verdict in other.verdicts:
            name = verdict.name if prefix is None else f"{prefix}/{verdict.name}"
            self.add(name, verdict.passed, verdict.witnesses, verdict.detail)
        for name, category in other.attachments.items():
            key = name if prefix is None else f"{prefix}/{name}"
            self.attachments[key] = category
        return self

    @property
    def passed(self):
        return all(verdict.passed for verdict in self.verdicts)

    @property
    def exit_status(self):
        return 0 if self.passed else 1

    def failures(self):
        return [verdict for verdict in self.verdicts if not verdict.passed]

    def verdict(self, name):
        """Get the first verdict called ``name``"""
        for verdict in self.verdicts:
            if verdict.name == name:
                return verdict
        raise KeyError(name)

    def as_dict(self):
        return {
            "schema": SCHEMA,
            "title": self.title,
            "passed": self.passed,
            "verdicts": [verdict.as_dict() for verdict in self.verdicts],
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self):
        lines = [self.title, "=" * len(self.title)]
        for verdict in self.verdicts:
            status = "pass" if verdict.passed else "FAIL"
            lines.append(f"[{status}] {verdict.name}")
            if verdict.detail:
                lines.append(f"       {verdict.detail}")
            for witness in verdict.witnesses:
                lines.append(f"       - {witness}")
        total = len(self.verdicts)
        failed = len(self.failures())
        lines.append(f"{total - failed}/{total} checks passed")
        return "\n".join(lines) + "\n"

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return f"Report '{self.title}' with {len(self.verdicts)} verdicts"
