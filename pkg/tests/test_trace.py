"""Wire-format tests: parsing strictness, round trips, merge semantics."""

import json
import random

import pytest

from codehinter.errors import SchemaMismatch, SubjectMismatch, ValidationError
from codehinter.locations import SourceLocation
from codehinter.trace import (
    CoverageSpectrum,
    TestRecord,
    TraceFile,
    merge_traces,
    parse_trace,
    serialize_trace,
    summarize,
)

CREATED = "2026-08-10T09:30:00+00:00"


def minimal_trace_obj():
    return {
        "schema_version": "codehinter-trace/1",
        "created_at": CREATED,
        "adapter": "test",
        "spectrum": {
            "subject_files": ["main.py"],
            "syntax_error": None,
            "records": [
                {
                    "test_id": "tests/test_main.py::test_one",
                    "outcome": "pass",
                    "message": None,
                    "covered": [{"file": "main.py", "line": 2}],
                }
            ],
        },
    }


def dumps(obj):
    return json.dumps(obj).encode()


def test_parse_minimal_trace():
    trace = parse_trace(dumps(minimal_trace_obj()))
    assert len(trace.spectrum.records) == 1
    rec = trace.spectrum.records[0]
    assert rec.outcome == "pass"
    assert rec.covered == (SourceLocation("main.py", 2),)


def test_wrong_version_is_schema_mismatch():
    obj = minimal_trace_obj()
    obj["schema_version"] = "codehinter-trace/2"
    with pytest.raises(SchemaMismatch):
        parse_trace(dumps(obj))


def test_syntax_error_with_records_rejected():
    obj = minimal_trace_obj()
    obj["spectrum"]["syntax_error"] = {"file": "main.py", "line": 1, "message": "bad"}
    with pytest.raises(ValidationError) as exc:
        parse_trace(dumps(obj))
    assert exc.value.json_path == "spectrum.records"


def test_unknown_field_rejected_with_path():
    obj = minimal_trace_obj()
    obj["spectrum"]["records"][0]["extra"] = 1
    with pytest.raises(ValidationError) as exc:
        parse_trace(dumps(obj))
    assert "extra" in exc.value.json_path


def test_covered_file_must_be_subject():
    obj = minimal_trace_obj()
    obj["spectrum"]["records"][0]["covered"][0]["file"] = "other.py"
    with pytest.raises(ValidationError) as exc:
        parse_trace(dumps(obj))
    assert exc.value.json_path == "spectrum.records[0].covered[0].file"


def test_unsorted_covered_rejected():
    obj = minimal_trace_obj()
    obj["spectrum"]["records"][0]["covered"] = [
        {"file": "main.py", "line": 5},
        {"file": "main.py", "line": 2},
    ]
    with pytest.raises(ValidationError):
        parse_trace(dumps(obj))


def test_duplicate_test_id_rejected():
    obj = minimal_trace_obj()
    obj["spectrum"]["records"].append(dict(obj["spectrum"]["records"][0]))
    with pytest.raises(ValidationError):
        parse_trace(dumps(obj))


def test_bad_timestamp_rejected():
    obj = minimal_trace_obj()
    obj["created_at"] = "yesterday"
    with pytest.raises(ValidationError) as exc:
        parse_trace(dumps(obj))
    assert exc.value.json_path == "created_at"


def test_z_suffix_timestamp_accepted():
    obj = minimal_trace_obj()
    obj["created_at"] = "2026-08-10T09:30:00Z"
    assert parse_trace(dumps(obj)).created_at.endswith("Z")


def test_roundtrip_byte_identity_on_canonical_form():
    canonical = serialize_trace(parse_trace(dumps(minimal_trace_obj())))
    assert serialize_trace(parse_trace(canonical)) == canonical


def make_trace(records, subjects=("main.py",), created=CREATED, adapter="test"):
    return TraceFile(
        spectrum=CoverageSpectrum(tuple(records), tuple(subjects)),
        created_at=created,
        adapter=adapter,
    )


def rec(test_id, outcome, covered=(), message=None):
    return TestRecord.create(
        test_id, outcome, message, [SourceLocation("main.py", n) for n in covered]
    )


def test_merge_right_biased_replacement():
    a = make_trace([rec("t1", "fail", [1])])
    b = make_trace([rec("t1", "pass", [1, 2])], created="2026-08-10T10:00:00+00:00")
    merged = merge_traces(a, b)
    assert merged.spectrum.records[0].outcome == "pass"
    assert merged.created_at == b.created_at


def test_merge_disjoint_ids():
    a = make_trace([rec("t1", "fail", [1])])
    b = make_trace([rec("t2", "pass", [2])])
    merged = merge_traces(a, b)
    assert [r.test_id for r in merged.spectrum.records] == ["t1", "t2"]


def test_merge_subject_mismatch():
    a = make_trace([rec("t1", "fail", [1])])
    b = TraceFile(
        spectrum=CoverageSpectrum((), ("other.py",)), created_at=CREATED, adapter="test"
    )
    with pytest.raises(SubjectMismatch):
        merge_traces(a, b)


def random_trace(rng, created=CREATED):
    ids = rng.sample([f"t{i}" for i in range(8)], k=rng.randint(1, 6))
    records = [
        rec(
            tid,
            rng.choice(["pass", "fail", "error"]),
            sorted(rng.sample(range(1, 9), k=rng.randint(0, 4))),
        )
        for tid in sorted(ids)
    ]
    return make_trace(records, created=created)


def test_merge_idempotent_and_right_biased_property():
    rng = random.Random(4242)
    for _ in range(200):
        a = random_trace(rng)
        b = random_trace(rng)
        assert merge_traces(a, a) == a
        merged = merge_traces(a, b)
        by_id = {r.test_id: r for r in merged.spectrum.records}
        for r in b.spectrum.records:
            assert by_id[r.test_id] == r
        for r in a.spectrum.records:
            if r.test_id not in {x.test_id for x in b.spectrum.records}:
                assert by_id[r.test_id] == r


def test_merge_associative_over_replacement():
    rng = random.Random(77)
    for _ in range(100):
        a, b, c = random_trace(rng), random_trace(rng), random_trace(rng)
        left = merge_traces(merge_traces(a, b), c)
        right = merge_traces(a, merge_traces(b, c))
        assert {r.test_id: r for r in left.spectrum.records} == {
            r.test_id: r for r in right.spectrum.records
        }


def test_summarize_counts_and_failures():
    spectrum = CoverageSpectrum(
        tuple(
            [
                rec("t1", "pass"),
                rec("t2", "pass"),
                rec("t3", "pass"),
                rec("t4", "fail", message="expected 3, got 4"),
                rec("t5", "fail", message="expected [], got [0]"),
            ]
        ),
        ("main.py",),
    )
    report = summarize(spectrum)
    assert (report.passed, report.failed, report.errored) == (3, 2, 0)
    assert [f.test_id for f in report.failing] == ["t4", "t5"]
    assert report.failing[0].message == "expected 3, got 4"
    assert not report.all_passed


def test_summarize_syntax_branch():
    obj = minimal_trace_obj()
    obj["spectrum"]["records"] = []
    obj["spectrum"]["syntax_error"] = {"file": "main.py", "line": 3, "message": "bad"}
    report = summarize(parse_trace(dumps(obj)).spectrum)
    assert report.has_syntax_error
    assert (report.passed, report.failed, report.errored) == (0, 0, 0)


def test_summarize_all_pass():
    report = summarize(CoverageSpectrum((rec("t1", "pass"),), ("main.py",)))
    assert report.all_passed
    assert report.failing == ()
