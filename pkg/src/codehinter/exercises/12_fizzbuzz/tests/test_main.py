from main import fizzbuzz


def test_fifteen():
    got = fizzbuzz(15)
    assert got == "FizzBuzz", f"expected 'FizzBuzz', got {got!r}"


def test_thirty():
    got = fizzbuzz(30)
    assert got == "FizzBuzz", f"expected 'FizzBuzz', got {got!r}"


def test_three():
    got = fizzbuzz(3)
    assert got == "Fizz", f"expected 'Fizz', got {got!r}"


def test_five():
    got = fizzbuzz(5)
    assert got == "Buzz", f"expected 'Buzz', got {got!r}"


def test_plain():
    got = fizzbuzz(7)
    assert got == "7", f"expected '7', got {got!r}"
