"""Run the reduction round-trip checks over a generated corpus and write a verdict log.

    python scripts/run_corpus.py --theorem 1 --out verdicts-t1.jsonl
    python scripts/run_corpus.py --theorem 2 --variants mixed addition --q 1/3
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from majority_illusion.elimination import VARIANTS
from majority_illusion.harness import corpus_2p2n, corpus_3cnf, run_corpus, summarise, write_verdict_log


@dataclass
class CorpusConfig:
    theorem: int = 1
    q: str | None = None
    variants: list[str] = field(default_factory=lambda: list(VARIANTS))
    random_count: int = 50
    seed: int = 0
    jobs: int = 1
    mutation: str | None = None
    out: str | None = None

    @property
    def effective_q(self) -> str:
        if self.q is not None:
            return self.q
        return "1" if self.theorem == 1 else "1/2"


def parse_args(argv=None) -> CorpusConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--theorem", type=int, choices=(1, 2), default=1)
    p.add_argument("--q")
    p.add_argument("--variants", nargs="+", choices=VARIANTS, default=list(VARIANTS))
    p.add_argument("--random-count", type=int, default=50, help="random formulas on top of the enumerated ones")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mutation", help="corrupt each verify encoding (theorem 1 only)")
    p.add_argument("--out", help="JSON-lines verdict log")
    return CorpusConfig(**vars(p.parse_args(argv)))


def main(argv=None) -> int:
    cfg = parse_args(argv)
    if cfg.theorem == 1:
        items = corpus_3cnf(random_count=cfg.random_count, seed=cfg.seed)
    else:
        items = corpus_2p2n(random_count=cfg.random_count, seed=cfg.seed)
    start = time.perf_counter()
    records = run_corpus(items, cfg.theorem, cfg.effective_q, cfg.variants, mutation=cfg.mutation, jobs=cfg.jobs)
    elapsed = time.perf_counter() - start
    if cfg.out:
        write_verdict_log(cfg.out, records)
    counts = summarise(records)
    print(json.dumps({"config": asdict(cfg), "records": len(records), "verdicts": counts, "seconds": round(elapsed, 2)}, indent=2))
    return 1 if counts.get("fail") else 0


if __name__ == "__main__":
    raise SystemExit(main())
