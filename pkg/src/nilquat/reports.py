"""Check records and report serialization for the verification suites.

A report is a list of per-check records; any failed record makes the
whole report (and the CLI exit code) fail.  JSON output is schema-stable
and deliberately excludes wall-clock timing so that identical runs are
byte-identical; the text format shows the timing.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckRecord:
    id: str
    claim: str
    status: str  # pass | fail | info
    detail: str = ""


@dataclass
class Report:
    suite: str
    m: int
    seed: int
    checks: list = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, id_, claim, ok, detail=""):
        if any(c.id == id_ for c in self.checks):
            raise ValueError("duplicate check id %r" % id_)
        self.checks.append(CheckRecord(id_, claim, "pass" if ok else "fail", detail))

    def info(self, id_, claim, detail=""):
        if any(c.id == id_ for c in self.checks):
            raise ValueError("duplicate check id %r" % id_)
        self.checks.append(CheckRecord(id_, claim, "info", detail))

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def sorted_checks(self):
        return sorted(self.checks, key=lambda c: c.id)

    def to_json_obj(self):
        return {
            "suite": self.suite,
            "m": self.m,
            "seed": self.seed,
            "ok": self.ok,
            "checks": [
                {"id": c.id, "claim": c.claim, "status": c.status, "detail": c.detail}
                for c in self.sorted_checks()
            ],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2)

    def to_text(self):
        lines = ["suite %s  (m=%d, seed=%d)  [%.2fs]"
                 % (self.suite, self.m, self.seed, self.elapsed)]
        for c in self.sorted_checks():
            mark = {"pass": "pass", "fail": "FAIL", "info": "info"}[c.status]
            line = "  [%s] %-38s %s" % (mark, c.id, c.claim)
            if c.detail:
                line += "  -- " + c.detail
            lines.append(line)
        lines.append("  => %s" % ("all pass" if self.ok else "FAILURES PRESENT"))
        return "\n".join(lines)


def merge_reports(name, m, seed, reports):
    out = Report(name, m, seed)
    for r in reports:
        for c in r.checks:
            out.checks.append(CheckRecord("%s.%s" % (r.suite, c.id), c.claim,
                                          c.status, c.detail))
        out.elapsed += r.elapsed
    return out
