from main import dot


def test_three_terms():
    got = dot([1, 2, 3], [4, 5, 6])
    assert got == 32, f"expected 32, got {got}"


def test_single_term():
    got = dot([3], [3])
    assert got == 9, f"expected 9, got {got}"


def test_with_zero():
    got = dot([0, 2], [5, 1])
    assert got == 2, f"expected 2, got {got}"


def test_empty():
    got = dot([], [])
    assert got == 0, f"expected 0, got {got}"
