"""Shared fixtures: backend switching, a synthetic novel, and the
acceptance-criteria report that is echoed after the test run."""

import numpy as np
import pytest

from yulesimon import backend, distribution
from yulesimon.rng import RngState

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def criterion_report():
    def record(number, ok, detail):
        status = ok if isinstance(ok, str) else ("PASS" if ok else "FAIL")
        ACCEPTANCE_LINES.append(f"criterion {number}: {status} -- {detail}")
    return record


@pytest.fixture
def numpy_backend():
    previous = backend.backend_name()
    backend.set_backend("numpy")
    yield
    backend.set_backend(previous)


def _letters(index):
    # aaaa, aaab, ... : purely alphabetic tokens survive the tokenizer
    chars = []
    for _ in range(4):
        index, r = divmod(index, 26)
        chars.append(chr(ord("a") + r))
    return "".join(reversed(chars))


@pytest.fixture(scope="session")
def synthetic_novel(tmp_path_factory):
    """A fake book whose word counts are exact draws from the model.

    Returns (path, counts): counts[i] is how often word i appears in the
    body between the license markers.  rho_true = 1.5, 4000 distinct words.
    """
    rho_true = 1.5
    n_words = 4000
    counts = distribution.sample(RngState(2024), rho_true, size=n_words)
    rng = np.random.default_rng(7)
    tokens = np.repeat([_letters(i) for i in range(n_words)], counts)
    rng.shuffle(tokens)
    lines = [" ".join(tokens[i:i + 12]) for i in range(0, tokens.size, 12)]
    text = (
        "Gutenberg header junk that must be stripped, gutenberg gutenberg.\n"
        "*** START OF THE PROJECT GUTENBERG EBOOK SYNTHETIC ***\n"
        + "\n".join(lines) + "\n"
        "*** END OF THE PROJECT GUTENBERG EBOOK SYNTHETIC ***\n"
        "Trailing license boilerplate, gutenberg gutenberg gutenberg.\n"
    )
    path = tmp_path_factory.mktemp("corpus") / "synthetic.txt"
    path.write_text(text, encoding="utf-8")
    return path, counts


def batch_means_se(x):
    """Monte Carlo standard error of mean(x) via sqrt(n) batch means."""
    x = np.asarray(x, dtype=float)
    nb = int(np.sqrt(x.size))
    bm = x[: nb * nb].reshape(nb, nb).mean(axis=1)
    return bm.std(ddof=1) / np.sqrt(nb)
