"""The bundled evaluation fixture: a small wiki dump plus claims.

The corpus is engineered so that each retrieval configuration unlocks a
distinct slice of the gold evidence:

* group A   — claims whose evidence plain TFIDF retrieval already finds;
* group B   — findable only once page titles join the TFIDF text;
* group C   — findable only through exact title matching of capitalized
              phrases (six decoy pages soak up the TFIDF slots);
* group D   — findable only through the "X (film)" companion heuristic;
* group E   — on retrieved pages, but ranked out of the sentence top-5 and
              reachable only in entire-articles mode;
* group U   — unreachable under every configuration (no matching phrase,
              or evidence beyond the fifty-line window);
* group G   — claims whose gold evidence needs several sentences at once;
* group NEI — claims with no usable evidence.

Claim ids are grouped by hundreds: A=1xx, B=2xx, C=3xx, D=4xx, E=5xx,
U=6xx, G=7xx, NEI=9xx.
"""

from __future__ import annotations

import json

# Words the decoy pages are dense in; tricky claims carry them so the decoys
# win the document TFIDF slots.
MAGNETS = ("famous", "american", "film", "series", "released", "award", "season")

PAGES: dict[str, list[str]] = {
    # --- decoys -----------------------------------------------------------
    "Harvest_Gazette": [
        "The gazette printed a famous misprint about a royal decree .",
        "An american reader in Durnsford mailed seventeen complaints .",
        "Its film reviews ran beside grain prices .",
        "A serialized Kelworth column became a beloved series .",
        "The editors released corrections every flood season .",
        "It won a regional award for typography .",
        "A packhorse post delivered rural editions .",
    ],
    "Copper_Almanac": [
        "The almanac listed famous tide tables .",
        "Sailors from Abberton to american harbors consulted it .",
        "A short film documented the printing press .",
        "Weather charts for Thornholme appeared in a numbered series .",
        "New editions released each harvest season .",
        "Collectors prize the award winning covers and shrapnel scarred plates .",
        "A Swinbrook shepherd wrote the star almanac notes .",
    ],
    "Velvet_Bulletin": [
        "The bulletin covered famous theatre gossip .",
        "Its american edition sold in Swinbrook , Abberton and two cities .",
        "Critics mocked its film column and its grandstand rhetoric .",
        "A puzzle series ran on the back page .",
        "Special issues released during carnival season .",
        "The Kelworth typeface won a design award twice .",
        "A Durnsford correspondent mailed weekly notes .",
    ],
    "Granite_Register": [
        "The register recorded famous quarry deeds and one packhorse sale .",
        "An american surveyor from Abberton kept the early volumes .",
        "A nitrate film copy preserves the page scans .",
        "Land entries at Durnsford follow a strict numbering series .",
        "Updates released each survey season .",
        "Clerks received an award for neat ledgers .",
    ],
    "Willow_Digest": [
        "The digest summarized famous court cases about raiders .",
        "Its american circulation peaked in winter .",
        "A student film from Thornholme parodied its dry tone .",
        "Case notes from Swinbrook formed an annual series .",
        "Bound volumes released every judicial season .",
        "The index earned an archival award and mentioned a shrapnel claim .",
        "An alien hoax once filled the letters page .",
    ],
    "Amber_Ledger": [
        "The ledger tracked famous auction lots and a grandstand lease .",
        "An american dealer annotated the margins .",
        "A silent film shows the Kelworth auction floor .",
        "Lot numbers run in an unbroken series and cite a packhorse decree .",
        "Catalogues released before each sale season .",
        "Buyers trusted its award certified appraisals of raiders loot .",
    ],
    # --- group A: plain TFIDF finds these ---------------------------------
    "Mount_Kelud": [
        "Mount Kelud is a volcano on Java .",
        "Mount Kelud erupted catastrophically in 1919 .",
        "Lahars swept the surrounding valleys .",
    ],
    "Brindle_Tortoise": [
        "The brindle tortoise grazes on coastal dunes .",
        "Hatchlings emerge after ninety days .",
    ],
    "Quillon_Lighthouse": [
        "Quillon Lighthouse guards a basalt headland .",
        "Its lamp burned whale oil until 1902 .",
    ],
    "Sorrel_Viaduct": [
        "Sorrel Viaduct spans the Miren gorge .",
        "Nineteen brick arches support the deck .",
    ],
    "Pemberton_Conservatory": [
        "Pemberton Conservatory cultivates alpine orchids .",
        "Its glasshouse dome survived two hailstorms .",
    ],
    "Tidewater_Mill": [
        "Tidewater Mill ground barley for the garrison .",
        "The waterwheel turned with the estuary tide .",
    ],
    "Falcon_Sonata": [
        "The Falcon Sonata premiered in an empty hall .",
        "Critics called its slow movement hypnotic .",
    ],
    "Juniper_Causeway": [
        "Juniper Causeway floods at every spring tide .",
        "Wooden stakes mark the safe crossing hours .",
    ],
    "Marrow_Canal": [
        "Marrow Canal links two upland reservoirs .",
        "Mules towed grain barges along it .",
        "The summit lock freezes first .",
    ],
    # --- group B: titles must join the TFIDF text -------------------------
    "Loch_Maren": [
        "It is a cold freshwater basin in the north .",
        "Trout and salmon spawn along its gravel shores .",
        "A small village clings to the southern end .",
    ],
    "Harrow_Beacon": [
        "The tower signaled invasions with pine fires .",
        "Shepherds rebuilt it after each lightning strike .",
    ],
    "Vesper_Dovecote": [
        "Masons raised the octagonal roost in 1512 .",
        "Six hundred nesting boxes line the walls .",
    ],
    "Gorse_Chapel": [
        "Pilgrims lit candles beneath the tin roof .",
        "A hermit kept the spring well clean .",
    ],
    # --- group C: only exact title matching reaches these ------------------
    "Kelworth": [
        "The abbey brewery supplied the northern granges .",
        "Novices copied psalters in the scriptorium .",
        "The crown ordered its closure by decree .",
        "Lead from the roof paid the surveyors .",
        "Sheep graze the cloister garth today .",
    ],
    "Abberton": [
        "The reservoir drowned a village green .",
        "Engineers raised the dam twice .",
        "Wildfowl winter on the open water .",
        "The pumping house still bears shrapnel scars .",
        "A sailing club leases the north shore .",
        "Herons nest in the drowned oaks .",
    ],
    "Durnsford": [
        "The racecourse closed after the war .",
        "A grandstand fire ended the final meeting .",
        "Houses cover the home straight now .",
        "Bookmakers once pitched tents by the rails .",
        "A chestnut mare won the last race .",
    ],
    "Swinbrook": [
        "The mill race powers a sawbench .",
        "Otters fish below the weir .",
        "A packhorse bridge crosses the leat .",
        "A cider press shares the mill yard .",
        "Eels climb the weir pool in spring .",
    ],
    "Thornholme": [
        "The priory fishponds silted long ago .",
        "A beacon once warned of raiders .",
        "Barley fields ring the ruined gate .",
    ],
    # --- group D: the film heuristic ---------------------------------------
    "Alien": [
        "Folklore describes visitors from other worlds .",
        "Scholars debate ancient sky paintings .",
    ],
    "Alien_-LRB-film-RRB-": [
        "The film follows a mining crew in deep space .",
        "Its sequel spawned a long franchise .",
        "Critics praised the claustrophobic set design .",
        "The studio reused the spacecraft models twice .",
        "A director's cut restored several scenes .",
        "Merchandise kept the franchise alive for decades .",
        "A stage musical adaptation flopped badly .",
        "Museums display the original costumes today .",
    ],
    # --- group E: entire-articles mode --------------------------------------
    "Crestfall_Bridge": [
        "Crestfall Bridge is a stone arch span .",
        "A famous gale once closed the crossing .",
        "The storm watch posts a flag each morning .",
        "Toll season begins after the thaw .",
        "Carters curse the narrow storm drains .",
        "It fell into the river one heavy winter night .",
        "A famous ballad mourns the old span .",
    ],
    "Milbrook_Tunnel": [
        "Milbrook Tunnel bores through chalk downs .",
        "Navvies dug it in a famous race against winter .",
        "Flood season shuts the lower gallery .",
        "An award plaque honors the lost crews .",
        "The airshafts whistle during flood surges .",
        "Water filled the whole bore one spring night .",
        "A famous inspection train still runs yearly .",
    ],
    # --- group U: unreachable ------------------------------------------------
    "Nendrum_Priory": [
        "Monks built a tide mill on the mudflats .",
        "Millstones turned twice each day .",
    ],
    # Long_Chronicle is generated in pages() below: sixty lines, evidence
    # beyond the fifty-line window.
    # --- group G: multi-sentence evidence ------------------------------------
    "Gable_Fresco": [
        "The Gable Fresco depicts a harvest feast .",
        "Restorers found a hidden signature in 1963 .",
    ],
    "Orchard_Codex": [
        "The Orchard Codex lists heritage apple cultivars .",
        "Monks copied it across three winters .",
    ],
}


def _long_chronicle() -> list[str]:
    lines = [
        "Long Chronicle records town disputes .",
        "Each year ends with a tithe audit .",
        "The chronicle abruptly changes hands in 1410 .",
        "Scribes numbered every chronicle entry .",
        "An abruptly narrower script begins midway .",
    ]
    fillers = [
        "a fence quarrel", "a stray ox", "a spoiled cask", "a broken plough",
        "a market toll", "a missing bell", "a flooded lane", "a tavern debt",
    ]
    for i in range(5, 55):
        lines.append(f"Entry {i} notes {fillers[i % len(fillers)]} .")
    lines.append("The last entry stops without warning .")  # line 55
    for i in range(56, 60):
        lines.append(f"Entry {i} repeats an older ruling .")
    return lines


def pages() -> dict[str, list[str]]:
    full = dict(PAGES)
    full["Long_Chronicle"] = _long_chronicle()
    return full


def _claim(claim_id, label, text, groups):
    if label == "NOT ENOUGH INFO":
        evidence = [[[claim_id, None, None, None]]]
    else:
        evidence = [
            [[claim_id, claim_id * 10 + i, page, line] for page, line in group]
            for i, group in enumerate(groups)
        ]
    return {
        "id": claim_id,
        "verifiable": "NOT VERIFIABLE" if label == "NOT ENOUGH INFO" else "VERIFIABLE",
        "label": label,
        "claim": text,
        "evidence": evidence,
    }


CLAIM_GROUPS: dict[str, list[int]] = {
    "A": [101, 102, 103, 104, 105, 106, 107, 108, 109],
    "B": [201, 202, 203, 204],
    "C": [301, 302, 303, 304, 305],
    "D": [401],
    "E": [501, 502],
    "U": [601, 602],
    "G": [701, 702, 703],
    "NEI": list(range(901, 913)),
}

# group -> first configuration (0-based index into table3_configs) whose
# retrieval reaches the gold evidence; None = never.
REACHABLE_FROM: dict[str, int | None] = {
    "A": 0, "B": 1, "C": 2, "D": 3, "E": 4, "U": None,
}


def claims() -> list[dict]:
    records = [
        # group A ------------------------------------------------------------
        _claim(101, "SUPPORTS", "Mount Kelud erupted catastrophically in 1919 .",
               [{("Mount_Kelud", 1)}]),
        _claim(102, "SUPPORTS", "The brindle tortoise grazes on coastal dunes .",
               [{("Brindle_Tortoise", 0)}]),
        _claim(103, "REFUTES", "Quillon Lighthouse never burned whale oil .",
               [{("Quillon_Lighthouse", 1)}]),
        _claim(104, "SUPPORTS", "Nineteen brick arches support the Sorrel Viaduct deck .",
               [{("Sorrel_Viaduct", 1)}]),
        _claim(105, "SUPPORTS", "Pemberton Conservatory cultivates alpine orchids .",
               [{("Pemberton_Conservatory", 0)}]),
        _claim(106, "REFUTES", "Tidewater Mill never ground barley for the garrison .",
               [{("Tidewater_Mill", 0)}]),
        _claim(107, "SUPPORTS", "The Falcon Sonata premiered in an empty hall .",
               [{("Falcon_Sonata", 0)}]),
        _claim(108, "SUPPORTS", "Juniper Causeway floods at every spring tide .",
               [{("Juniper_Causeway", 0)}]),
        # Mixed groups: one singleton, one multi-sentence alternative.
        _claim(109, "SUPPORTS", "Marrow Canal links two upland reservoirs .",
               [{("Marrow_Canal", 0)}, {("Marrow_Canal", 1), ("Marrow_Canal", 2)}]),
        # group B ------------------------------------------------------------
        _claim(201, "SUPPORTS", "Loch Maren is famous for its award winning fishing season .",
               [{("Loch_Maren", 1)}]),
        _claim(202, "SUPPORTS", "Harrow Beacon appears in a famous american film about invasions .",
               [{("Harrow_Beacon", 0)}]),
        _claim(203, "SUPPORTS", "Vesper Dovecote holds a famous award for american masonry .",
               [{("Vesper_Dovecote", 0)}]),
        _claim(204, "REFUTES", "Gorse Chapel never released a famous candle series .",
               [{("Gorse_Chapel", 0)}]),
        # group C ------------------------------------------------------------
        _claim(301, "SUPPORTS",
               "Kelworth , a famous american landmark , was closed by royal decree during award season .",
               [{("Kelworth", 2)}]),
        _claim(302, "REFUTES",
               "Abberton was never hit by shrapnel despite famous american film season rumors .",
               [{("Abberton", 3)}]),
        _claim(303, "SUPPORTS",
               "Durnsford , famous across american award circles , lost the old grandstand before the film season .",
               [{("Durnsford", 1)}]),
        _claim(304, "SUPPORTS",
               "Swinbrook keeps a packhorse crossing famous in american film series and award photographs .",
               [{("Swinbrook", 2)}]),
        _claim(305, "REFUTES",
               "Thornholme never faced raiders despite a famous american award season film legend .",
               [{("Thornholme", 1)}]),
        # group D ------------------------------------------------------------
        _claim(401, "SUPPORTS", "Alien remains the most famous american film released in its decade .",
               [{("Alien_-LRB-film-RRB-", 0)}]),
        # group E ------------------------------------------------------------
        _claim(501, "SUPPORTS", "Crestfall Bridge collapsed during a famous storm season .",
               [{("Crestfall_Bridge", 5)}]),
        _claim(502, "SUPPORTS", "Milbrook Tunnel flooded during a famous award season .",
               [{("Milbrook_Tunnel", 5)}]),
        # group U ------------------------------------------------------------
        _claim(601, "SUPPORTS", "A famous island abbey released award winning flour .",
               [{("Nendrum_Priory", 0)}]),
        _claim(602, "SUPPORTS", "Long Chronicle ends abruptly .",
               [{("Long_Chronicle", 55)}]),
        # group G ------------------------------------------------------------
        _claim(701, "SUPPORTS", "Restorers signed the famous Gable Fresco harvest scene .",
               [{("Gable_Fresco", 0), ("Gable_Fresco", 1)}]),
        _claim(702, "REFUTES", "Monks never copied the Orchard Codex cultivar list .",
               [{("Orchard_Codex", 0), ("Orchard_Codex", 1)}]),
        _claim(703, "SUPPORTS", "A fresco and a codex both record harvest customs .",
               [{("Gable_Fresco", 0), ("Orchard_Codex", 0)}]),
        # group NEI ----------------------------------------------------------
        _claim(901, "NOT ENOUGH INFO", "Mount Kelud rises above three thousand meters .", []),
        _claim(902, "NOT ENOUGH INFO", "The famous almanac sold nine million copies .", []),
        _claim(903, "NOT ENOUGH INFO", "A village festival honors the lighthouse keeper .", []),
        _claim(904, "NOT ENOUGH INFO", "Trout fishing season opens in early spring .", []),
        _claim(905, "NOT ENOUGH INFO", "The gazette employed twelve typesetters .", []),
        _claim(906, "NOT ENOUGH INFO", "An american film crew visited the viaduct .", []),
        _claim(907, "NOT ENOUGH INFO", "Monks traded flour for candle wax .", []),
        _claim(908, "NOT ENOUGH INFO", "The conservatory hosts a winter concert series .", []),
        _claim(909, "NOT ENOUGH INFO", "Storm drains date from the roman era .", []),
        _claim(910, "NOT ENOUGH INFO", "The codex mentions a lost orchard map .", []),
        _claim(911, "NOT ENOUGH INFO", "Seventeen barges sank in the canal locks .", []),
        _claim(912, "NOT ENOUGH INFO", "The award committee met in secret .", []),
    ]
    return records


def write_dump(path) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        for title, sentences in pages().items():
            record = {
                "id": title,
                "text": " ".join(sentences),
                "lines": "\n".join(f"{i}\t{s}" for i, s in enumerate(sentences)),
            }
            fp.write(json.dumps(record, ensure_ascii=False) + "\n")


def write_claims(path) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        for record in claims():
            fp.write(json.dumps(record, ensure_ascii=False) + "\n")


def table3_configs():
    """The five retrieval configurations, weakest first."""
    from feverpipe.retrieval import RetrievalConfig, SentenceMode

    return [
        ("baseline", RetrievalConfig()),
        ("+titles", RetrievalConfig(use_title_in_tfidf=True)),
        ("+titles+ne", RetrievalConfig(use_title_in_tfidf=True, use_ne_retrieval=True)),
        ("+titles+ne+film", RetrievalConfig(
            use_title_in_tfidf=True, use_ne_retrieval=True, use_film_heuristic=True)),
        ("entire-articles", RetrievalConfig(
            sentence_mode=SentenceMode.ENTIRE_ARTICLES,
            use_title_in_tfidf=True, use_ne_retrieval=True, use_film_heuristic=True)),
    ]
