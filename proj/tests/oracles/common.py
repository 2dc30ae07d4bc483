"""Independent Python reference of the scripted embedding and text helpers."""
import math
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
DATA = ROOT / "tests" / "data"
MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

STOPWORDS = {line.strip() for line in (ROOT / "assets" / "stopwords.txt").read_text().splitlines() if line.strip()}


def stem(w):
    if len(w) > 4 and w.endswith("ies"):
        return w[:-3] + "y"
    if len(w) > 3 and w.endswith("s") and not w.endswith(("ss", "us", "is")):
        return w[:-1]
    return w


def content_tokens(text):
    out, cur = [], []
    for ch in text + " ":
        if ch.isascii() and ch.isalnum():
            cur.append(ch.lower())
        else:
            word = "".join(cur)
            if word and word not in STOPWORDS:
                out.append(stem(word))
            cur = []
    return out


def fnv1a64(data):
    h = 0xCBF29CE484222325
    for b in data:
        h = ((h ^ b) * 0x100000001B3) & MASK
    return h


def token_stream(token, dimension):
    state = fnv1a64(("tok:" + token).encode()) ^ GOLDEN
    for _ in range(dimension):
        state = (state + GOLDEN) & MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        z ^= z >> 31
        yield 2.0 * ((z >> 11) * 2.0 ** -53) - 1.0


def hash_embedding(text, dimension=64):
    tokens = content_tokens(text) or [text.strip().lower()]
    total = [0.0] * dimension
    for t in tokens:
        for i, x in enumerate(token_stream(t, dimension)):
            total[i] += x
    norm = math.sqrt(sum(x * x for x in total))
    return [x / norm for x in total]


def cosine(a, b):
    dot = sum(x * y for x, y in zip(a, b))
    return max(-1.0, min(1.0, dot / (math.sqrt(sum(x * x for x in a)) * math.sqrt(sum(y * y for y in b)))))
