from main import merge_sorted


def test_interleaved():
    got = merge_sorted([1, 3], [2, 4])
    assert got == [1, 2, 3, 4], f"expected [1, 2, 3, 4], got {got}"


def test_first_exhausts():
    got = merge_sorted([1], [2, 3])
    assert got == [1, 2, 3], f"expected [1, 2, 3], got {got}"


def test_left_empty():
    got = merge_sorted([], [7])
    assert got == [7], f"expected [7], got {got}"


def test_right_empty():
    got = merge_sorted([5], [])
    assert got == [5], f"expected [5], got {got}"


def test_stable_on_tie():
    got = merge_sorted([2], [2])
    assert got == [2, 2], f"expected [2, 2], got {got}"
