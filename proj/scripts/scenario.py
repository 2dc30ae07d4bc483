"""Scripted LLM answers for the bundled scenario and the Appendix examples."""

TOPIC = "misinformation awareness among older adults"

FIELDS = [
    ("Psychology", "Cognitive Psychology"),
    ("Education", "Adult Education"),
    ("Sociology", "Sociology of Media"),
]

# persona (subfield) -> questions
EQS = {
    "Cognitive Psychology": [
        "What cognitive strategies reduce belief in false information?",
        "Does psychological inoculation help older adults resist misinformation?",
        "How does overconfidence affect the detection of fake news?",
    ],
    "Adult Education": [
        "How can older adults be motivated to learn digital skills?",
        "How effective are peer-led education programs for seniors?",
        "What teaching methods improve media literacy in later life?",
    ],
    "Sociology of Media": [
        "How do family networks spread misinformation among older adults?",
        "What role does social media play in seniors' daily lives?",
        "How does community trust shape responses to false news?",
    ],
}

# question -> (pseudo-answers, terms per pseudo-answer, queries)
EXPANSIONS = {
    "What cognitive strategies reduce belief in false information?": (
        [
            "Analytical thinking and cognitive reflection help people discern true from false news.",
            "Accuracy prompts shift attention to truth before sharing.",
            "Lateral reading lets readers verify sources outside the article.",
            "Repetition creates an illusory truth effect that strategies must counter.",
        ],
        [
            ["analytical thinking", "cognitive reflection", "discernment"],
            ["accuracy prompts", "attention to accuracy"],
            ["lateral reading", "source verification"],
            ["illusory truth effect", "repetition"],
        ],
        [
            "analytical thinking discernment false news",
            "cognitive reflection misinformation belief",
            "accuracy prompts sharing misinformation",
            "lateral reading verify sources",
            "illusory truth effect repetition false claims",
            "cognitive strategies verify sources",
            "critical thinking training accuracy judgments",
            "cognitive decline familiarity truth judgments",
            "working memory news evaluation older adults",
        ],
    ),
    "Does psychological inoculation help older adults resist misinformation?": (
        [
            "Inoculation exposes people to weakened misinformation techniques.",
            "Prebunking games build resistance to manipulation.",
            "Booster sessions extend how long protection lasts.",
            "Older adults show better discernment after inoculation training.",
        ],
        [
            ["psychological inoculation", "weakened doses"],
            ["prebunking games", "resistance to manipulation"],
            ["booster sessions", "persistence"],
            ["discernment", "inoculation training"],
        ],
        [
            "psychological inoculation misinformation",
            "prebunking games resistance manipulation",
            "inoculation messages belief false information",
            "prebunking booster sessions",
            "inoculation training older adults discernment",
            "weakened doses misinformation techniques",
            "resistance to manipulative content",
            "prebunking effects persistence",
            "inoculation across age groups",
        ],
    ),
    "How does overconfidence affect the detection of fake news?": (
        [
            "Overconfidence in detecting false headlines predicts susceptibility.",
            "Metacognitive calibration is poor among people who overrate their skill.",
            "Feedback on accuracy can reduce overconfidence.",
        ],
        [
            ["overconfidence", "false headlines", "susceptibility"],
            ["metacognition", "calibration"],
            ["accuracy feedback"],
        ],
        [
            "overconfidence detecting false headlines",
            "overconfidence misinformation susceptibility",
            "metacognition fake news detection",
            "reliability ratings true false headlines",
            "calibration news judgments",
            "overconfidence discernment manipulative content",
            "accuracy judgments older adults headlines",
            "self-assessed skill fake news",
            "confidence false news detection",
        ],
    ),
    "How can older adults be motivated to learn digital skills?": (
        [
            "Perceived usefulness of digital skills drives motivation in later life.",
            "Self-efficacy and technology anxiety shape willingness to join training.",
            "Intrinsic motivation and social connection support lifelong learning.",
            "Encouragement from family members sustains persistence.",
        ],
        [
            ["perceived usefulness", "digital skills"],
            ["self-efficacy", "technology anxiety"],
            ["intrinsic motivation", "lifelong learning"],
            ["family encouragement", "persistence"],
        ],
        [
            "motivation learn digital skills later life",
            "self-efficacy technology anxiety older adults",
            "intrinsic motivation lifelong learning courses",
            "perceived usefulness digital skills seniors",
            "self-determination theory adult learning",
            "barriers older adults training participation",
            "family communication learning goals",
            "encouragement relatives seniors practicing skills",
            "older learners willingness participate training",
        ],
    ),
    "How effective are peer-led education programs for seniors?": (
        [
            "Peer-led programs pair trained senior volunteers with fellow older adults.",
            "Intergenerational partnerships connect students and seniors around technology.",
            "Effectiveness is measured with attendance, retention and skill tests.",
        ],
        [
            ["peer-led education", "senior volunteers", "peer tutors"],
            ["intergenerational learning", "partnerships"],
            ["program effectiveness", "retention", "skill tests"],
        ],
        [
            "peer-led education programs older adults",
            "senior volunteers peer tutors",
            "intergenerational learning partnerships technology",
            "peer learning circles online safety",
            "program effectiveness attendance retention",
            "volunteer facilitators adult education",
            "peer tutors fact-checking practices",
            "community sessions seniors technology",
            "confidence taught by peers",
        ],
    ),
    "What teaching methods improve media literacy in later life?": (
        [
            "Media literacy education teaches people to identify fake news.",
            "Workshops cover search skills, source verification and privacy settings.",
            "Hands-on smartphone practice supports transfer of skills.",
        ],
        [
            ["media literacy education", "fake news"],
            ["workshop curriculum", "source verification", "privacy settings"],
            ["hands-on practice", "smartphones"],
        ],
        [
            "media literacy education fake news",
            "digital literacy programs evaluate sources",
            "workshop curriculum source verification",
            "library-based training seniors internet",
            "information literacy assessments course",
            "hands-on smartphone practice verification skills",
            "instructors adapted materials older learners",
            "teaching methods media literacy later life",
            "search skills privacy settings training",
        ],
    ),
    "How do family networks spread misinformation among older adults?": (
        [
            "Family WhatsApp groups are a major channel for forwarded rumors.",
            "Younger relatives often correct older family members.",
            "Kinship networks provide both exposure and informal fact-checking.",
        ],
        [
            ["family WhatsApp groups", "forwarding"],
            ["younger relatives", "corrections"],
            ["kinship networks", "informal fact-checking"],
        ],
        [
            "family WhatsApp groups misinformation",
            "relatives correct misinformation older family members",
            "intergenerational ties forward news",
            "messaging apps private conversation news",
            "kinship networks rumors fact-checking",
            "grandchildren technology brokers",
            "family members challenged shared content",
            "sharing misinformation family networks seniors",
            "informal fact-checking family",
        ],
    ),
    "What role does social media play in seniors' daily lives?": (
        [
            "Social media supports social connectedness and reduces loneliness.",
            "Older adults use Facebook to keep in touch with distant family.",
            "Digital divides shape who participates online.",
        ],
        [
            ["social connectedness", "loneliness"],
            ["Facebook", "family relationships"],
            ["digital divides", "online participation"],
        ],
        [
            "social media use later life connectedness",
            "older adults Facebook relationships family",
            "platform adoption people over sixty-five",
            "digital divides online participation income",
            "loneliness social isolation time online",
            "news feeds trust personal contacts",
            "everyday social media routines older users",
            "social connectedness loneliness seniors",
            "older users encounter news social media",
        ],
    ),
    "How does community trust shape responses to false news?": (
        [
            "Trust in local institutions shapes receptivity to misinformation.",
            "Community organizations act as trusted intermediaries.",
            "Declining local news leaves gaps that rumors fill.",
        ],
        [
            ["institutional trust", "receptivity"],
            ["community organizations", "trusted intermediaries"],
            ["local news", "information gaps"],
        ],
        [
            "community trust misinformation receptivity",
            "trusted intermediaries community organizations",
            "local news decline information gaps rumors",
            "institutional trust corrections official sources",
            "neighborhood networks false claims",
            "civic groups public health guidance seniors",
            "social capital communities misinformation spread",
            "trust local institutions older adults",
            "community responses false news",
        ],
    ),
}

# Subtopics each scenario question treats as related (cluster relevance rule).
RELATED = {
    "What cognitive strategies reduce belief in false information?": {"psy_think", "psy_inoc"},
    "Does psychological inoculation help older adults resist misinformation?": {"psy_inoc", "psy_think"},
    "How does overconfidence affect the detection of fake news?": {"psy_inoc", "psy_think", "cs_detect"},
    "How can older adults be motivated to learn digital skills?": {"edu_motiv", "edu_lit", "edu_peer"},
    "How effective are peer-led education programs for seniors?": {"edu_peer", "edu_lit"},
    "What teaching methods improve media literacy in later life?": {"edu_lit", "edu_peer"},
    "How do family networks spread misinformation among older adults?": {"soc_family", "soc_media"},
    "What role does social media play in seniors' daily lives?": {"soc_media", "soc_family"},
    "How does community trust shape responses to false news?": {"soc_trust", "med_health"},
}

# Paper dragged to the orientation view in the API scenario.
PAPER_SEEDED = {
    "Health misinformation among older adults on social media": [
        ("Medicine", "How does health misinformation influence vaccine decisions of older adults?"),
        ("Medicine", "Can clinicians help older patients recognize unreliable health websites?"),
        ("Psychology", "Why do older adults trust false health claims shared online?"),
    ],
}

# Appendix examples: EQ generation per (field, research idea), reproduced verbatim.
APPENDIX_EQS = {
    ("Social Psychology", "The relationship between mobile phone use and mental well-being"): [
        "How does mobile phone use impact social connectedness and isolation?",
        "Do smartphone interactions influence users' self-esteem and self-worth?",
        "Can excessive mobile phone use contribute to social anxiety or fear of missing out (FOMO)?",
    ],
    ("Transport Economics", "Promote sustainable travel choices among urban commuters"): [
        "How do fare subsidies impact urban commuters' adoption of public transport?",
        "What are the economic benefits of reducing car dependency in cities?",
        "How do congestion pricing policies influence commuter behavior and mode choice?",
    ],
    ("Public Policy", "Facilitate community engagement in local environmental conservation efforts"): [
        "How can policy frameworks enhance public participation in local conservation programs?",
        "What incentives can encourage local communities to engage in conservation efforts?",
        "Which governance structures best support community-led environmental conservation initiatives?",
    ],
}

# Appendix query-expansion examples. Pseudo-answers and terms are ours; the
# query lists are the Appendix's with-PA and without-PA outputs.
APPENDIX_QUERIES = [
    {
        "question": "Does heavy social media use affect code-switching behaviors in multilingual speakers?",
        "topic": "Social media and multilingual communication",
        "discipline": "Linguistics",
        "pseudo_answers": [
            "Social media environments can normalize code-switching among multilingual users.",
            "Users negotiate identity through code-switching in online communities.",
            "Audience design leads speakers to switch strategically for different readers.",
        ],
        "terms": [
            ["code-switching normalization", "multilingualism"],
            ["identity negotiation", "online communities", "social capital"],
            ["audience design", "strategic code-switching"],
        ],
        "with_pa": [
            "social media influence code-switching multilingual",
            "code-switching normalization social media environments",
            "multilingualism social media language practices",
            "identity negotiation code-switching social media",
            "digital communication multilingual audience design",
            "social contexts code-switching social media",
            "social capital code-switching online communities",
            "strategic code-switching social media multilingual",
            "building online communities multilingual code-switching",
        ],
        "without_pa": [
            "heavy social media use code-switching multilingual speakers",
            "social media impact multilingual code-switching",
            "code-switching frequency social media multilingualism",
            "effects of social media on bilingual code-switching",
            "digital communication code-switching multilingual",
            "online interaction code-switching behavior multilingual speakers",
            "social media language switching bilingualism",
            "social media multilingual communication behavior",
            "impact of social networks on code-switching",
        ],
    },
    {
        "question": "How effective are price incentives in shifting commuter preferences towards sustainable travel methods?",
        "topic": "Promote sustainable travel choices among urban commuters",
        "discipline": "Economics",
        "pseudo_answers": [
            "Discounted fares and subsidies lower the cost of sustainable commuting.",
            "Behavioral economics nudges complement price signals.",
            "Long-term effectiveness depends on infrastructure and public awareness.",
        ],
        "terms": [
            ["discounted fares", "subsidies", "cost-benefit analysis"],
            ["behavioral economics", "nudges"],
            ["longitudinal effectiveness", "infrastructure", "complementary measures"],
        ],
        "with_pa": [
            "Price incentives commuter preferences sustainable travel",
            "Discounted fares impact sustainable commuting",
            "Subsidies cost-benefit analysis commuting",
            "Behavioral economics nudges sustainable commuting",
            "Price incentives behavioral change transportation",
            "Environmental nudges commuting behavior",
            "Longitudinal effectiveness price incentives sustainable transport",
            "Infrastructure public awareness sustainable commuting",
            "Complementary measures price incentives transportation",
        ],
        "without_pa": [
            "price incentives commuter preferences sustainable travel",
            "financial incentives sustainable transportation",
            "commuter behavior price incentives sustainable travel",
            "effectiveness of price incentives on sustainable commuting",
            "incentives for sustainable travel modal shift",
            "price reductions sustainable transportation methods",
            "commuter choices financial incentives sustainable travel",
            "economic incentives public transportation uptake",
            "reward systems for sustainable commuting",
        ],
    },
    {
        "question": "What ethical guidelines should govern the use of robots in elderly care?",
        "topic": "Robots that support aging in place",
        "discipline": "Philosophy",
        "pseudo_answers": [
            "Care robots should respect patient autonomy and dignity.",
            "Privacy and data security must be protected when robots monitor elders.",
            "Companion robots can support social well-being and emotional health.",
        ],
        "terms": [
            ["patient autonomy", "dignity", "ethical design"],
            ["privacy", "data security", "surveillance"],
            ["companion robots", "emotional support", "acceptance"],
        ],
        "with_pa": [
            "patient autonomy elderly robot care",
            "dignity human-robot interaction elder care",
            "ethical design robots elder care",
            "privacy elderly care robots",
            "data security ethical concerns elder care",
            "surveillance data ethics elderly",
            "social well-being companion robots elderly",
            "emotional support robots mental health elderly",
            "human-robot interaction elderly acceptance",
        ],
        "without_pa": [
            "ethical guidelines robots elderly care",
            "robotics ethics senior care",
            "AI ethics in elderly care",
            "robot caregivers ethical considerations",
            "elderly care robotics ethical standards",
            "robot use in elder care ethical issues",
            "ethics of humanoid robots in eldercare",
            "moral guidelines for caregiving robots",
            "ethical framework for AI caregivers",
        ],
    },
]

# Appendix ablation outputs: (template, field, research idea) -> questions.
APPENDIX_ABLATIONS = {
    ("eq_generation_no_persona", "Social Psychology", "The relationship between mobile phone use and mental well-being"): [
        "How does mobile phone use impact social interactions and mental well-being?",
        "Does excessive phone use contribute to feelings of loneliness or depression?",
        "Can mindful usage of mobile phones improve mental health outcomes?",
    ],
    ("eq_generation_no_simplification", "Social Psychology", "The relationship between mobile phone use and mental well-being"): [
        "How does the frequency of mobile phone use impact perceived social support and interpersonal relationships among different age groups?",
        "What role does social comparison via social media on mobile phones play in affecting self-esteem and mental well-being?",
        "How do patterns of mobile phone use influence feelings of loneliness and social connectedness in various social settings?",
    ],
    ("eq_generation_no_persona", "Transport Economics", "Promote sustainable travel choices among urban commuters"): [
        "How does pricing affect urban commuters' choice for sustainable travel methods?",
        "What role does convenience play in urban commuters' decision to use public transport?",
        "How do travel time comparisons influence commuters' preference for car vs. public transport?",
    ],
    ("eq_generation_no_simplification", "Transport Economics", "Promote sustainable travel choices among urban commuters"): [
        "What are the elasticity effects of pricing policies (e.g., congestion pricing or parking fees) on urban commuters' travel behavior towards more sustainable modes of transportation?",
        "How do investments in public transit infrastructure economically impact commuters' propensity to shift from private car usage to public transportation in urban areas?",
        "What are the cost-benefit implications of implementing incentives such as subsidies for electric vehicle purchases or biking to work programs on overall urban travel sustainability?",
    ],
    ("eq_generation_no_persona", "Public Policy", "Facilitate community engagement in local environmental conservation efforts"): [
        "How can public policy increase community participation in environmental conservation?",
        "What policies effectively engage youth in local environmental efforts?",
        "How do incentives in policies impact community-led conservation activities?",
    ],
    ("eq_generation_no_simplification", "Public Policy", "Facilitate community engagement in local environmental conservation efforts"): [
        "What policy mechanisms are most effective in incentivizing local communities to participate in environmental conservation efforts?",
        "How do local governance structures impact the level of community engagement in environmental conservation programs?",
        "What role does public policy play in building partnerships between local governments, non-profit organizations, and community groups to support environmental conservation initiatives?",
    ],
}
