from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sdglab.corpus import Corpus, PublicationRecord

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "sdglab" / "data"

VOCAB = ("climate change warming carbon emission energy solar wind ocean "
         "acidification hazard flood drought policy impact mitigation "
         "adaptation temperature sea level greenhouse gas renewable storage "
         "health forest city model data study analysis effect trend").split()


def random_record(rng: random.Random, i: int, prefix: str = "d",
                  vocab=VOCAB) -> PublicationRecord:
    title = " ".join(rng.choices(vocab, k=rng.randint(4, 9)))
    abstract = " ".join(rng.choices(vocab, k=rng.randint(15, 40)))
    keywords = tuple(" ".join(rng.choices(vocab, k=rng.randint(1, 2)))
                     for _ in range(rng.randint(0, 3)))
    doi = f"10.9999/{prefix}.{i}" if rng.random() < 0.85 else None
    return PublicationRecord(
        internal_id=f"{prefix}{i}",
        doi=doi,
        title=title,
        abstract=abstract,
        keywords=keywords,
        year=rng.randint(2012, 2022),
        document_type="article",
    )


def random_corpus(seed: int, n: int, prefix: str = "d",
                  name: str = "synthetic") -> Corpus:
    rng = random.Random(seed)
    return Corpus(name, [random_record(rng, i, prefix) for i in range(n)])


@pytest.fixture(scope="session")
def corpus_500() -> Corpus:
    return random_corpus(101, 500)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def demo_dir() -> Path:
    return DATA_DIR / "demo"
