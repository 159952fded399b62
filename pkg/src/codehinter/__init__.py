"""CodeHinter: a debugging assistant for novice programmers.

Runs a project's test suite through a pluggable adapter, ranks suspicious
source lines from the coverage spectrum, and offers runtime-validated hint
quizzes, print-statement plans, diffs, and guided explanations without
handing over the solution unprompted.

Subpackages import lazily where they carry heavy dependencies; this module
stays cheap to import so the bundled test adapter can start quickly.
"""

__version__ = "0.1.0"

TRACE_SCHEMA_VERSION = "codehinter-trace/1"
