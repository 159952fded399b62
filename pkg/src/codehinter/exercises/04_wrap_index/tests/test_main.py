from main import wrap_index


def test_wraps_past_end():
    got = wrap_index(5, 5)
    assert got == 0, f"expected 0, got {got}"


def test_wraps_far_past_end():
    got = wrap_index(7, 5)
    assert got == 2, f"expected 2, got {got}"


def test_negative():
    got = wrap_index(-1, 5)
    assert got == 4, f"expected 4, got {got}"


def test_in_range():
    got = wrap_index(2, 5)
    assert got == 2, f"expected 2, got {got}"


def test_zero():
    got = wrap_index(0, 3)
    assert got == 0, f"expected 0, got {got}"
