#!/usr/bin/env python3
"""Generates data/corpus.json, the offline paper corpus used by corpus mode.

Papers are grouped into subtopics; abstracts are drawn from each subtopic's
sentence bank with a fixed seed so the output is stable.
"""
import hashlib
import json
import random
import sys
from pathlib import Path

SEED = 20240917

# key: (discipline list, label, titles, sentence bank)
SUBTOPICS = {
    "psy_inoc": (
        ["Psychology"],
        "Inoculation and Overconfidence Strategies to Combat Misinformation",
        [
            "Psychological inoculation against misinformation in older adults",
            "Prebunking games build resistance to manipulation",
            "Overconfidence in detecting false headlines and misinformation susceptibility",
            "Inoculation messages reduce belief in false information across age groups",
            "Booster sessions and the persistence of prebunking effects",
            "Weakened doses of misinformation techniques as a psychological vaccine",
            "Metacognition and overconfidence in fake news detection",
        ],
        [
            "Psychological inoculation exposes people to weakened doses of misinformation techniques.",
            "Prebunking games build resistance to manipulation among older adults.",
            "Overconfidence in detecting false headlines predicts greater misinformation susceptibility.",
            "Inoculation messages reduced belief in false information across age groups.",
            "Participants rated the reliability of true and false headlines after the inoculation intervention.",
            "Effects of prebunking persisted for several weeks with booster sessions.",
            "Older adults who received inoculation training showed better discernment of manipulative content.",
        ],
    ),
    "psy_think": (
        ["Psychology"],
        "Critical Thinking and Cognitive Improvement",
        [
            "Analytical thinking and discernment between true and false news",
            "Cognitive reflection and belief in misinformation",
            "Critical thinking training improves accuracy judgments in later life",
            "Repetition and the illusory truth effect in older adults",
            "Accuracy prompts reduce sharing of misinformation",
            "Lateral reading as a cognitive strategy to verify sources",
        ],
        [
            "Analytical thinking and cognitive reflection predict discernment between true and false news.",
            "Age-related cognitive decline may increase reliance on familiarity when judging truth.",
            "Critical thinking training improved accuracy judgments among older adults.",
            "The illusory truth effect shows that repetition increases perceived accuracy of false claims.",
            "Accuracy prompts shift attention toward truth and reduce sharing of misinformation.",
            "Working memory and processing speed were measured alongside news evaluation tasks.",
            "Cognitive strategies such as lateral reading help readers verify sources.",
        ],
    ),
    "edu_lit": (
        ["Education"],
        "Digital and Media Literacy Training for Seniors",
        [
            "Digital literacy programs for older adults evaluating online information",
            "Media literacy education and the identification of fake news",
            "Library-based digital literacy training for seniors",
            "Information literacy gains after a workshop curriculum",
            "Hands-on smartphone practice and verification skills",
            "Adapting media literacy materials to older learners",
        ],
        [
            "Digital literacy programs teach older adults to evaluate online information sources.",
            "The workshop curriculum covered search skills, source verification and privacy settings.",
            "Media literacy education improved participants' ability to identify fake news.",
            "Library-based training sessions reached seniors with limited internet experience.",
            "Pre and post assessments measured information literacy gains after the course.",
            "Instructors adapted materials to the learning needs of older learners.",
            "Hands-on practice with smartphones supported transfer of verification skills.",
        ],
    ),
    "edu_peer": (
        ["Education"],
        "Peer-Led and Intergenerational Learning Programs",
        [
            "Peer-led education programs for older adults",
            "Intergenerational learning partnerships around technology",
            "Senior volunteers as peer tutors in community sessions",
            "Peer learning circles on online safety",
            "Evaluating the effectiveness of peer education with seniors",
            "Training volunteer facilitators in adult education methods",
        ],
        [
            "Peer-led education programs pair trained senior volunteers with fellow older adults.",
            "Intergenerational learning partnerships connected students and seniors around technology.",
            "Peer tutors modeled fact-checking practices during community sessions.",
            "Learners reported greater confidence when taught by peers of similar age.",
            "Program effectiveness was evaluated with attendance, retention and skill tests.",
            "Volunteer facilitators received training in adult education methods.",
            "Community centers hosted weekly peer learning circles on online safety.",
        ],
    ),
    "edu_motiv": (
        ["Education"],
        "Motivation and Self-Efficacy in Later-Life Learning",
        [
            "Motivation to learn digital skills in later life",
            "Self-efficacy and technology anxiety among older learners",
            "Intrinsic motivation in lifelong learning courses",
            "Barriers to participation in digital skills training for seniors",
            "Self-determination theory and older adult learning",
            "Family encouragement and persistence in learning new skills",
        ],
        [
            "Motivation to learn digital skills in later life depends on perceived usefulness.",
            "Self-efficacy and technology anxiety shape older adults' willingness to participate in training.",
            "Intrinsic motivation and social connection drive enrollment in lifelong learning courses.",
            "Learning goals linked to family communication increased persistence.",
            "Barriers include fear of mistakes, cost and lack of support.",
            "Self-determination theory explains autonomy, competence and relatedness in adult learning.",
            "Encouragement from relatives motivated seniors to keep practicing new skills.",
        ],
    ),
    "soc_family": (
        ["Sociology"],
        "Family Networks and Messaging Apps",
        [
            "Family WhatsApp groups and misinformation among older adults",
            "Younger relatives correcting misinformation from older family members",
            "Intergenerational ties and forwarding news in families",
            "Messaging apps between private conversation and public news",
            "Kinship networks, rumors and informal fact-checking",
            "Grandchildren as technology brokers for grandparents",
        ],
        [
            "Family WhatsApp groups are a major channel for sharing misinformation among older adults.",
            "Younger relatives often correct misinformation shared by older family members.",
            "Intergenerational ties shape how seniors interpret and forward news.",
            "Interviews revealed tensions when family members challenged shared content.",
            "Messaging apps blur boundaries between private conversation and public news.",
            "Kinship networks provide both exposure to rumors and informal fact-checking.",
            "Grandchildren acted as technology brokers for their grandparents.",
        ],
    ),
    "soc_media": (
        ["Sociology"],
        "Social Media Routines and Connectedness in Later Life",
        [
            "Social media use in later life and social connectedness",
            "Older adults on Facebook maintaining family relationships",
            "Platform adoption among people over sixty-five",
            "Digital divides in online participation of seniors",
            "Loneliness, social isolation and time spent online",
            "Everyday social media routines of older users",
        ],
        [
            "Social media use in later life supports social connectedness and reduces loneliness.",
            "Older adults use Facebook to maintain relationships with distant family and friends.",
            "Survey data describe platform adoption trends among people over sixty-five.",
            "Online participation is shaped by digital divides in income and education.",
            "Seniors curate their news feeds based on trust in personal contacts.",
            "Social isolation and loneliness were associated with more time spent online.",
            "Everyday social media routines structure how older users encounter news.",
        ],
    ),
    "soc_trust": (
        ["Sociology"],
        "Community Trust and Local Information Ecosystems",
        [
            "Community trust and receptivity to misinformation",
            "Community organizations as trusted intermediaries",
            "Local news decline and information gaps filled by rumors",
            "Institutional trust and acceptance of corrections",
            "Neighborhood networks and the circulation of false claims",
            "Social capital buffers the spread of misinformation",
        ],
        [
            "Trust in local communities and institutions shapes receptivity to misinformation.",
            "Community organizations act as trusted intermediaries for accurate information.",
            "Declining local news coverage leaves information gaps filled by rumors.",
            "Institutional trust predicts acceptance of corrections from official sources.",
            "Neighborhood networks circulate both reliable updates and false claims.",
            "Religious and civic groups disseminated public health guidance to seniors.",
            "Social capital in communities buffers the spread of misinformation.",
        ],
    ),
    "med_health": (
        ["Medicine"],
        "Health Misinformation and Older Patients",
        [
            "Health misinformation among older adults on social media",
            "Online health information seeking by older patients with chronic conditions",
            "False COVID-19 cure claims shared among seniors",
            "Clinicians countering health misinformation in consultations",
            "Health literacy and misleading medical content",
            "Misinformation exposure and vaccine hesitancy in later life",
        ],
        [
            "Health misinformation about vaccines and treatments reaches older adults through social media.",
            "Older patients with chronic conditions seek online health information frequently.",
            "False claims about COVID-19 cures were widely shared among seniors.",
            "Clinicians can counter health misinformation during routine consultations.",
            "Health literacy moderates the influence of misleading medical content.",
            "Misinformation exposure was linked to vaccine hesitancy in later life.",
            "Patient education materials improved recognition of unreliable health websites.",
        ],
    ),
    "pol_share": (
        ["Political Science"],
        "Political Fake News Sharing",
        [
            "Fake news sharing on Facebook during an election",
            "Partisan identity and belief in political misinformation",
            "Concentration of false political news sharing among few users",
            "Age differences in sharing untrustworthy political content",
            "Polarization and the spread of misleading political claims",
        ],
        [
            "Older adults shared more fake news articles on Facebook during the election.",
            "Partisan identity influences belief in political misinformation.",
            "Sharing of false political news was concentrated among a small group of users.",
            "Age differences in sharing persist after controlling for ideology.",
            "Political polarization amplifies the spread of misleading claims.",
            "Exposure to untrustworthy websites was measured with browsing data.",
            "Corrections from fact-checkers reduced belief in false political claims.",
        ],
    ),
    "cs_detect": (
        ["Computer Science"],
        "Automated Misinformation Detection",
        [
            "Machine learning classifiers for fake news detection",
            "Transformer models for misinformation detection benchmarks",
            "Datasets for automated fact-checking",
            "Explainable detection tools for verification decisions",
            "Propagation cascades distinguish false stories",
        ],
        [
            "Machine learning classifiers detect fake news using linguistic features.",
            "Transformer models achieve high accuracy on misinformation detection benchmarks.",
            "Datasets of labeled claims support training of automated fact-checking systems.",
            "Explainable detection tools can support users' verification decisions.",
            "Network features of propagation cascades distinguish false stories.",
            "Browser extensions flag unreliable sources for end users.",
            "Evaluation included precision, recall and robustness to adversarial text.",
        ],
    ),
}

# Stand-alone papers that share only generic vocabulary with the scenario.
SCATTERED = [
    ("Economics", "Retirement savings decisions of older adults",
     "We study how older adults adjust retirement savings after pension reforms. Household survey data show modest responses to financial incentives."),
    ("Engineering", "Fall detection sensors for older adults living at home",
     "Wearable sensors detect falls using accelerometer signals. The system was tested in homes of older adults for three months."),
    ("Geography", "Housing and mobility of older adults in rural regions",
     "Rural older adults face long travel distances to services. Mapping of bus routes shows gaps in coverage."),
    ("Business", "Marketing financial products to seniors",
     "Banks target seniors with tailored financial products. Focus groups examined trust in advertising claims."),
    ("Art", "Community art workshops and wellbeing of seniors",
     "Weekly painting workshops improved mood and social contact among seniors in community centers."),
    ("Environmental Science", "Climate change misinformation on online platforms",
     "Misleading claims about climate change spread on online platforms. Content analysis identified recurring narratives."),
    ("History", "Rumors and propaganda in wartime newspapers",
     "Historical newspapers reveal how rumors and propaganda shaped public opinion during wartime."),
    ("Law", "Regulating online platforms against false information",
     "Legal frameworks for platform liability address the spread of false information while protecting speech."),
]

FIRST = ["A.", "B.", "C.", "D.", "E.", "F.", "G.", "H.", "J.", "K.", "L.", "M.", "N.", "P.", "R.", "S.", "T."]
LAST = ["Alvarez", "Becker", "Chen", "Dubois", "Eriksen", "Fischer", "Garcia", "Haddad", "Ito", "Jensen",
        "Kowalski", "Lindqvist", "Mensah", "Novak", "Okafor", "Patel", "Quinn", "Rossi", "Sato", "Tanaka",
        "Usman", "Vargas", "Weber", "Yilmaz", "Zhang"]
VENUES = {
    "Psychology": ["Psychological Science", "Journal of Experimental Psychology: Applied", "Psychology and Aging"],
    "Education": ["Educational Gerontology", "Computers & Education", "Adult Education Quarterly"],
    "Sociology": ["New Media & Society", "Ageing & Society", "Information, Communication & Society"],
    "Medicine": ["Journal of Medical Internet Research", "BMJ Open", "Vaccine"],
    "Political Science": ["Science Advances", "Political Communication", "American Political Science Review"],
    "Computer Science": ["Proceedings of ACL", "Proceedings of CHI", "Proceedings of WWW"],
}


def paper_id(title: str) -> str:
    return hashlib.sha1(title.encode("utf-8")).hexdigest()


def build():
    rng = random.Random(SEED)
    papers = []
    subtopic_of = {}
    for key, (disciplines, _label, titles, bank) in SUBTOPICS.items():
        for title in titles:
            k = rng.randint(4, 6)
            picked = sorted(rng.sample(range(len(bank)), k))
            abstract = " ".join(bank[i] for i in picked)
            pid = paper_id(title)
            venue_pool = VENUES.get(disciplines[0], ["Proceedings"])
            papers.append({
                "paper_id": pid,
                "title": title,
                "abstract": abstract,
                "disciplines": list(disciplines),
                "year": rng.randint(2014, 2024),
                "venue": rng.choice(venue_pool),
                "authors": [f"{rng.choice(FIRST)} {rng.choice(LAST)}" for _ in range(rng.randint(1, 4))],
                "citation_count": rng.randint(0, 400),
                "url": None,
            })
            subtopic_of[pid] = key
    for discipline, title, abstract in SCATTERED:
        pid = paper_id(title)
        papers.append({
            "paper_id": pid,
            "title": title,
            "abstract": abstract,
            "disciplines": [discipline],
            "year": rng.randint(2010, 2024),
            "venue": None,
            "authors": [f"{rng.choice(FIRST)} {rng.choice(LAST)}"],
            "citation_count": rng.randint(0, 50),
            "url": None,
        })
        subtopic_of[pid] = "scattered"

    # Hub for the citation drawer: cited across many disciplines.
    hub = paper_id("Fake news sharing on Facebook during an election")
    by_id = {p["paper_id"]: p for p in papers}
    by_id[hub]["citation_count"] = 1250
    citing = [
        paper_id(t) for t in [
            "Health misinformation among older adults on social media",
            "Misinformation exposure and vaccine hesitancy in later life",
            "False COVID-19 cure claims shared among seniors",
            "Psychological inoculation against misinformation in older adults",
            "Accuracy prompts reduce sharing of misinformation",
            "Repetition and the illusory truth effect in older adults",
            "Media literacy education and the identification of fake news",
            "Family WhatsApp groups and misinformation among older adults",
            "Community trust and receptivity to misinformation",
            "Machine learning classifiers for fake news detection",
            "Propagation cascades distinguish false stories",
            "Partisan identity and belief in political misinformation",
            "Regulating online platforms against false information",
            "Climate change misinformation on online platforms",
        ]
    ]
    references = [
        paper_id(t) for t in [
            "Rumors and propaganda in wartime newspapers",
            "Platform adoption among people over sixty-five",
            "Polarization and the spread of misleading political claims",
        ]
    ]
    citations = {hub: citing}
    refs = {hub: references}
    # Each citing paper lists the hub among its references.
    for c in citing:
        refs.setdefault(c, []).append(hub)
    for r in references:
        citations.setdefault(r, []).append(hub)
    return {"papers": papers, "citations": citations, "references": refs}, subtopic_of


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "corpus.json"
    corpus, _ = build()
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(corpus, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {len(corpus['papers'])} papers to {out}")


if __name__ == "__main__":
    main()
