import os
import afpmine as afp
import hypothesis
import numpy as np
import pytest
from strategies import seeded_corpus

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=5)
hypothesis.settings.register_profile("thorough", max_examples=1000, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.register_profile("dev", deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))

TINY_FIMI = "1 2\n1 2\n1\n"


@pytest.fixture
def tiny_db():
    "D = {{a,b},{a,b},{a}} with a=1, b=2."
    return afp.TransactionDatabase.from_transactions([[1, 2], [1, 2], [1]])


@pytest.fixture
def tiny_path(tmp_path):
    path = tmp_path / "tiny.dat"
    path.write_text(TINY_FIMI)
    return str(path)


@pytest.fixture
def chain_db():
    "D = {{a,b,c},{a,b},{a}}: supports 3, 2, 1 and q_max 3."
    return afp.TransactionDatabase.from_transactions([[1, 2, 3], [1, 2], [1]])


@pytest.fixture(scope="session")
def corpus():
    return seeded_corpus(200)
