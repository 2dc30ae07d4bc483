#!/usr/bin/env python3
"""Writes the scripted LLM fixtures under fixtures/scripted.

Prompt chains with known variables are keyed directly. Prompts whose
variables depend on pipeline state (field lists, cluster listings, titles)
are collected by running the CLI and the HTTP server with FIXTURE_RECORD set
and answering every <key>.request.json until the runs complete.

usage: author_fixtures.py [--build build] [--clean]
"""
import argparse
import collections
import hashlib
import json
import os
import shutil
import socket
import subprocess
import sys
import tempfile
import time
import urllib.error
import urllib.request
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(Path(__file__).resolve().parent))

import make_corpus  # noqa: E402
import scenario  # noqa: E402

FIXTURES = ROOT / "fixtures" / "scripted"
INVENTORY = ROOT / "tests" / "data" / "fixture_eqs.json"
PERSONA_DISCIPLINE = {"Social Psychology": "Psychology", "Transport Economics": "Economics",
                      "Public Policy": "Political Science"}
CORPUS = ROOT / "data" / "corpus.json"


def canonical(template_id, variables):
    # Same bytes as nlohmann::json::dump() of the C++ canonical request.
    return json.dumps({"template_id": template_id, "variables": variables}, sort_keys=True,
                      separators=(",", ":"), ensure_ascii=False)


def fixture_key(template_id, variables):
    return hashlib.sha256(canonical(template_id, variables).encode("utf-8")).hexdigest()


def write_fixture(template_id, variables, text):
    path = FIXTURES / (fixture_key(template_id, variables) + ".txt")
    path.write_text(text, encoding="utf-8")
    return path


def numbered(items):
    return "\n".join(f"{i + 1}. {x}" for i, x in enumerate(items))


def bulleted(items):
    return "\n".join(f"- {x}" for x in items) if items else "(none)"


# --- rule-based answers -------------------------------------------------------

CORPUS_DATA, SUBTOPIC_OF = make_corpus.build()
SUBTOPIC_OF_TITLE = {p["title"]: SUBTOPIC_OF[p["paper_id"]] for p in CORPUS_DATA["papers"]}
LABELS = {k: v[1] for k, v in make_corpus.SUBTOPICS.items()}
EXPANSIONS = dict(scenario.EXPANSIONS)
for item in scenario.APPENDIX_QUERIES:
    EXPANSIONS[item["question"]] = (item["pseudo_answers"], item["terms"], item["with_pa"])
WITHOUT_PA = {item["question"]: item["without_pa"] for item in scenario.APPENDIX_QUERIES}


def listed_subtopics(papers_var):
    out = []
    for line in papers_var.splitlines():
        title = line.split(". ", 1)[1].rsplit(" [", 1)[0]
        out.append(SUBTOPIC_OF_TITLE[title])
    return collections.Counter(out)


def answer(template_id, v):
    if template_id == "identify_fields":
        if v["research_idea"] == scenario.TOPIC:
            return "\n".join(f"{d} | {s}" for d, s in scenario.FIELDS)
    elif template_id in ("eq_generation", "eq_generation_no_persona", "eq_generation_no_simplification"):
        qs = None
        if template_id == "eq_generation":
            if v["research_idea"] == scenario.TOPIC:
                qs = scenario.EQS.get(v["field"])
            else:
                qs = scenario.APPENDIX_EQS.get((v["field"], v["research_idea"]))
        else:
            qs = scenario.APPENDIX_ABLATIONS.get((template_id, v["field"], v["research_idea"]))
        if qs:
            return "\n".join(f"- {q}" for q in qs)
    elif template_id == "eq_from_paper":
        seeded = scenario.PAPER_SEEDED.get(v["title"])
        if seeded:
            return "\n".join(f"{d} | {q}" for d, q in seeded)
    elif template_id == "pseudo_answers":
        if v["question"] in EXPANSIONS:
            return "\n".join(f"- {a}" for a in EXPANSIONS[v["question"]][0])
    elif template_id == "answer_terms":
        if v["question"] in EXPANSIONS:
            terms = EXPANSIONS[v["question"]][1]
            return "\n".join(f"{i + 1}: " + "; ".join(t) for i, t in enumerate(terms))
    elif template_id == "compose_queries":
        if v["question"] in EXPANSIONS and v["previous_queries"] == "":
            return "\n".join(f'{i + 1}. "{q}"' for i, q in enumerate(EXPANSIONS[v["question"]][2]))
    elif template_id == "queries_without_pa":
        if v["question"] in WITHOUT_PA:
            return "\n".join(f'{i + 1}. "{q}"' for i, q in enumerate(WITHOUT_PA[v["question"]]))
    elif template_id == "cluster_relevance":
        counts = listed_subtopics(v["papers"])
        majority = counts.most_common(1)[0][0]
        related = scenario.RELATED.get(v["question"], set())
        return "Yes" if majority in related else "No"
    elif template_id == "cluster_divisible":
        counts = listed_subtopics(v["papers"])
        big = [k for k, n in counts.items() if n >= 3]
        return "Yes" if len(big) >= 2 else "No"
    elif template_id == "theme_title":
        counts = listed_subtopics(v["papers"])
        majority = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0][0]
        return LABELS.get(majority, "Other Related Work")
    raise SystemExit(f"no rule answers {template_id} with {json.dumps(v)[:300]}")


# --- direct chains ------------------------------------------------------------

def write_chain(question, topic):
    pas, terms, _ = EXPANSIONS[question]
    write_fixture("pseudo_answers", {"research_idea": topic, "question": question},
                  answer("pseudo_answers", {"question": question}))
    write_fixture("answer_terms", {"question": question, "bullets": numbered(pas)},
                  answer("answer_terms", {"question": question}))
    term_lines = ["; ".join(t) for t in terms]
    cv = {"question": question, "terms": numbered(term_lines), "num_queries": "9", "previous_queries": ""}
    write_fixture("compose_queries", cv, answer("compose_queries", cv))


def write_direct():
    for (field, idea) in scenario.APPENDIX_EQS:
        v = {"field": field, "research_idea": idea, "num_rq": "3"}
        write_fixture("eq_generation", v, answer("eq_generation", v))
    for (template, field, idea) in scenario.APPENDIX_ABLATIONS:
        v = {"field": field, "research_idea": idea, "num_rq": "3"}
        write_fixture(template, v, answer(template, v))
    for questions in scenario.EQS.values():
        for q in questions:
            write_chain(q, scenario.TOPIC)
    for item in scenario.APPENDIX_QUERIES:
        write_chain(item["question"], item["topic"])
        v = {"question": item["question"], "num_queries": "9"}
        write_fixture("queries_without_pa", v, answer("queries_without_pa", v))


def write_inventory():
    """Every question the fixtures can produce, for the C++ acceptance checks."""
    batches = []
    for discipline, subfield in scenario.FIELDS:
        batches.append({"template": "eq_generation", "discipline": discipline, "persona": subfield,
                        "research_idea": scenario.TOPIC, "questions": scenario.EQS[subfield]})
    for (field, idea), qs in scenario.APPENDIX_EQS.items():
        batches.append({"template": "eq_generation", "discipline": PERSONA_DISCIPLINE[field], "persona": field,
                        "research_idea": idea, "questions": qs})
    for (template, field, idea), qs in scenario.APPENDIX_ABLATIONS.items():
        batches.append({"template": template, "discipline": PERSONA_DISCIPLINE[field], "persona": field,
                        "research_idea": idea, "questions": qs})
    explored = [{"topic": scenario.TOPIC, "discipline": d, "subfield": sub, "question": q}
                for d, sub in scenario.FIELDS for q in scenario.EQS[sub]]
    explored += [{"topic": it["topic"], "discipline": it["discipline"], "question": it["question"]}
                 for it in scenario.APPENDIX_QUERIES]
    appendix = [{"topic": it["topic"], "discipline": it["discipline"], "question": it["question"],
                 "with_pa": it["with_pa"], "without_pa": it["without_pa"]} for it in scenario.APPENDIX_QUERIES]
    seeded = [{"title": t, "questions": [{"discipline": d, "question": q} for d, q in qs]}
              for t, qs in scenario.PAPER_SEEDED.items()]
    doc = {"generation_batches": batches, "explored_eqs": explored, "appendix_queries": appendix,
           "paper_seeded": seeded}
    INVENTORY.write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")


# --- record loop ----------------------------------------------------------------

def answer_pending():
    n = 0
    for req in sorted(FIXTURES.glob("*.request.json")):
        doc = json.loads(req.read_text(encoding="utf-8"))
        key = fixture_key(doc["template_id"], doc["variables"])
        assert req.name == key + ".request.json", f"key mismatch for {req.name}"
        (FIXTURES / (key + ".txt")).write_text(answer(doc["template_id"], doc["variables"]), encoding="utf-8")
        req.unlink()
        n += 1
    return n


def env_for_record():
    env = dict(os.environ)
    env.update({"FIXTURE_RECORD": "1", "LLM_MODE": "scripted", "SCHOLAR_MODE": "corpus"})
    env.pop("CACHE_DIR", None)
    return env


def run_cli(cli):
    with tempfile.TemporaryDirectory() as tmp:
        cmd = [str(cli), "explore", "--topic", scenario.TOPIC, "--max-fields", "6", "--out", str(Path(tmp) / "o.json"),
               "--scripted", str(FIXTURES), "--corpus", str(CORPUS), "--data-dir", str(Path(tmp) / "data")]
        return subprocess.run(cmd, env=env_for_record(), capture_output=True, text=True)


def free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def call(base, method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(base + path, data=data, method=method, headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req, timeout=60) as r:
            return r.status, json.loads(r.read() or b"null")
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read() or b"null")


def run_api_flow(cli):
    """create -> generate -> select 2 -> explore -> drop theme -> paper EQs. True when no fixture was missing."""
    port = free_port()
    with tempfile.TemporaryDirectory() as tmp:
        proc = subprocess.Popen([str(cli), "serve", "--bind", f"127.0.0.1:{port}", "--scripted", str(FIXTURES),
                                 "--corpus", str(CORPUS), "--data-dir", tmp], env=env_for_record(),
                                stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
        base = f"http://127.0.0.1:{port}/api/v1"
        try:
            for _ in range(100):
                try:
                    socket.create_connection(("127.0.0.1", port), timeout=0.2).close()
                    break
                except OSError:
                    time.sleep(0.05)
            _, s = call(base, "POST", "/sessions", {"topic": scenario.TOPIC})
            sid = s["session_id"]
            st, g = call(base, "POST", f"/sessions/{sid}/eqs/generate", {"mode": "topic"})
            if st != 200:
                return False
            eqs = g["eqs"][:2]
            for eq in eqs:
                call(base, "PATCH", f"/sessions/{sid}/eqs/{eq['id']}", {"selected": True})
            for eq in eqs:
                _, j = call(base, "POST", f"/sessions/{sid}/eqs/{eq['id']}/explore")
                while True:
                    _, job = call(base, "GET", f"/sessions/{sid}/jobs/{j['job_id']}")
                    if job["status"] in ("done", "failed"):
                        break
                    time.sleep(0.05)
                if job["status"] == "failed":
                    return False
            paper = make_corpus.paper_id(next(iter(scenario.PAPER_SEEDED)))
            st, _ = call(base, "POST", f"/sessions/{sid}/eqs/generate",
                         {"mode": "paper", "paper_id": paper, "focus_keywords": ["older adults"]})
            return st == 200
        finally:
            proc.terminate()
            proc.wait()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--build", default=str(ROOT / "build"))
    ap.add_argument("--clean", action="store_true")
    args = ap.parse_args()
    cli = Path(args.build) / "tools" / "coexplore"

    if args.clean and FIXTURES.exists():
        shutil.rmtree(FIXTURES)
    FIXTURES.mkdir(parents=True, exist_ok=True)
    write_direct()
    write_inventory()

    for attempt in range(30):
        r = run_cli(cli)
        answered = answer_pending()
        if r.returncode == 0 and answered == 0:
            break
        if answered == 0:
            sys.exit(f"CLI failed without a missing fixture:\n{r.stderr}")
    else:
        sys.exit("CLI record loop did not converge")

    for attempt in range(30):
        ok = run_api_flow(cli)
        answered = answer_pending()
        if ok and answered == 0:
            break
        if not ok and answered == 0:
            sys.exit("API flow failed without a missing fixture")
    else:
        sys.exit("API record loop did not converge")
    for attempt in range(30):
        r = subprocess.run([str(Path(args.build) / "tests" / "acceptance"), "--only", "conservation"],
                           env=env_for_record(), capture_output=True, text=True)
        answered = answer_pending()
        if r.returncode == 0 and answered == 0:
            break
        if answered == 0:
            sys.exit(f"acceptance conservation failed without a missing fixture:\n{r.stdout}{r.stderr}")
    else:
        sys.exit("conservation record loop did not converge")
    print(f"{len(list(FIXTURES.glob('*.txt')))} fixtures in {FIXTURES}")


if __name__ == "__main__":
    main()
