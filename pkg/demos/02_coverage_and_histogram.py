"""
Coverage of gold evidence and evidence-size statistics
======================================================

Run on a DocRED-format file given as the first argument, or on a synthetic
corpus of random documents when no file is given.
"""

import random
import sys

import evipath
from evipath import Document, Entity, Mention, RelationInstance
from evipath.evidence_eval import emit_histogram, emit_report
from evipath.pathfinder import TABLE_CONFIGS


def synthetic(n_docs=300, seed=0):
    rng = random.Random(seed)
    docs = []
    for d in range(n_docs):
        sents = tuple(tuple(f"w{j}" for j in range(rng.randint(5, 20)))
                      for _ in range(rng.randint(3, 12)))
        ents = []
        for e in range(rng.randint(5, 20)):
            ms = []
            for _ in range(rng.randint(1, 3)):
                s = rng.randrange(len(sents))
                ms.append(Mention(s, 0, 1, sents[s][0], "MISC"))
            ents.append(Entity(e, tuple(ms)))
        insts = []
        for _ in range(rng.randint(1, 8)):
            h, t = rng.sample(range(len(ents)), 2)
            # plant evidence near the pair's mentions
            ev = {rng.choice(ents[h].mentions).sentence_index,
                  rng.choice(ents[t].mentions).sentence_index}
            insts.append(RelationInstance(h, t, "R", frozenset(ev)))
        docs.append(Document(f"doc{d}", sents, tuple(ents), tuple(insts)))
    return docs


corpus = evipath.load_docred(sys.argv[1]) if len(sys.argv) > 1 else synthetic()
print(f"{len(corpus)} documents")

###############################################################################
# Evidence-size histogram

hist = evipath.evidence_size_distribution(corpus)
print(emit_histogram(hist, "md").decode())

###############################################################################
# Coverage, #Sent and #Path for each rule combination

reports = [evipath.coverage_report(corpus, cfg, keep_instances=False) for cfg in TABLE_CONFIGS]
print(emit_report(reports, "md").decode())

# adding rules never uncovers an instance
c, cm, cmd = (evipath.coverage_report(corpus, evipath.RuleConfig.from_code(code)).covered_keys()
              for code in ("c", "cm", "cmd"))
assert c <= cm <= cmd
