VOWELS = "aeiou"


def count_vowels(text):
    count = 0
    for ch in text.lower():
        if ch in VOWELS:
            count += 2
    return count
