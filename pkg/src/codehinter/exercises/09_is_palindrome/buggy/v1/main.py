def is_palindrome(text):
    cleaned = [ch.lower() for ch in text if ch.isalnum()]
    i = 0
    j = len(cleaned) - 2
    while i < j:
        if cleaned[i] != cleaned[j]:
            return False
        i += 1
        j -= 1
    return True
