from main import running_max


def test_climbing():
    got = running_max([3, 1, 4, 1, 5])
    assert got == [3, 3, 4, 4, 5], f"expected [3, 3, 4, 4, 5], got {got}"


def test_descending():
    got = running_max([5, 4, 3])
    assert got == [5, 5, 5], f"expected [5, 5, 5], got {got}"


def test_single():
    got = running_max([2])
    assert got == [2], f"expected [2], got {got}"


def test_empty():
    got = running_max([])
    assert got == [], f"expected [], got {got}"
