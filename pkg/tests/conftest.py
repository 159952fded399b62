import pytest

from codehinter.locations import SourceLocation
from codehinter.trace import CoverageSpectrum, TestRecord

_CORPUS_CACHE = None


def corpus_exercises():
    """Corpus loaded once per session, without re-running validation."""
    global _CORPUS_CACHE
    if _CORPUS_CACHE is None:
        from codehinter.corpus import load_corpus

        _CORPUS_CACHE = {ex.id: ex for ex in load_corpus(validate=False)}
    return _CORPUS_CACHE


def materialize_exercise(ex_id, target_dir, variant="v1"):
    """Write one corpus exercise into target_dir and run its tests once."""
    from codehinter.runner import run_end_to_end

    exercise = corpus_exercises()[ex_id]
    config = exercise.materialize(str(target_dir), variant)
    report, spectrum, snapshot = run_end_to_end(config)
    return exercise, config, report, spectrum, snapshot


def spectrum_from(cases, subject_files=None):
    """Build a CoverageSpectrum from (test_id, outcome, [(file, line), ...]) triples."""
    records = []
    files = set(subject_files or [])
    for test_id, outcome, covered in cases:
        locs = [SourceLocation(f, n) for f, n in covered]
        files.update(f for f, _ in covered)
        records.append(TestRecord.create(test_id, outcome, None, locs))
    return CoverageSpectrum(tuple(records), tuple(sorted(files)))


@pytest.fixture
def tmp_project(tmp_path):
    """A minimal green project: one subject file, one plain-assert test file."""

    def build(subject_source, test_source, subject_name="main.py"):
        root = tmp_path / "proj"
        root.mkdir(exist_ok=True)
        (root / subject_name).write_text(subject_source)
        tests = root / "tests"
        tests.mkdir(exist_ok=True)
        (tests / "test_main.py").write_text(test_source)
        return root

    return build
