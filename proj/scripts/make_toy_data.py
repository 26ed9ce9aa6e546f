#!/usr/bin/env python3
"""Generate the small Finnish toy resources under data/toy/.

The output is deterministic for a given --seed. Files written:

  corpus.conllu      annotated stanza corpus, two eras (1800, 1900)
  embeddings.txt     lemma vectors, header "<count> <dim>"
  ngrams.tsv         5-gram lemma counts
  concreteness.tsv   lemma -> 1..5
  sentiment.tsv      lemma -> polarity in [-1, 1]
  morphology.tsv     lemma, canonical tags, surface
  pos.tsv            lemma -> UPOS
"""

import argparse
import math
import random
from pathlib import Path

BACK = set("aou")
VOWELS = set("aeiouyäö")

NOUN_SG_NOM = "Case=Nom|Number=Sing"
NOUN_SG_GEN = "Case=Gen|Number=Sing"
NOUN_SG_PAR = "Case=Par|Number=Sing"
NOUN_PL_NOM = "Case=Nom|Number=Plur"
ADJ_SG_NOM = "Case=Nom|Degree=Pos|Number=Sing"
ADJ_SG_GEN = "Case=Gen|Degree=Pos|Number=Sing"
ADJ_SG_PAR = "Case=Par|Degree=Pos|Number=Sing"
VERB_3SG = "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin|Voice=Act"

# topic tags: w water, f forest, s sky, h home, l love, d death, t toil
NOUNS = {
    "vesi": "w", "meri": "w", "järvi": "w", "aalto": "w", "virta": "w",
    "ranta": "w", "laine": "w", "sade": "ws", "joki": "w", "kala": "w",
    "laiva": "w", "kaivo": "wh", "tulva": "w", "suo": "wf", "jää": "ws",
    "pisara": "w", "lumi": "ws", "saari": "w", "vene": "w", "lähde": "wf",
    "lampi": "wf",
    "metsä": "f", "puu": "f", "koivu": "f", "mänty": "f", "kukka": "fl",
    "oksa": "f", "marja": "f", "kallio": "f", "polku": "f", "kivi": "f",
    "ruoho": "f", "heinä": "ft", "karhu": "f", "susi": "fd", "lintu": "fs",
    "peikko": "f", "kettu": "f", "salo": "f", "kanto": "f", "kanta": "t",
    "kuu": "s", "tähti": "s", "taivas": "s", "pilvi": "s", "yö": "sd",
    "tuuli": "sw", "valo": "sl", "aurinko": "s", "varjo": "sd", "aamu": "s",
    "ilta": "s", "päivä": "s", "talvi": "s", "kesä": "sl", "syksy": "sd",
    "halla": "st", "myrsky": "sw", "salama": "s",
    "talo": "h", "koti": "hl", "ovi": "h", "ikkuna": "h", "pöytä": "h",
    "tupa": "h", "leipä": "ht", "maito": "h", "äiti": "hl", "isä": "h",
    "lapsi": "hl", "kehto": "h", "tie": "h", "kylä": "h", "piha": "h",
    "kirkko": "hd", "kello": "h", "uuni": "h",
    "sydän": "l", "rakkaus": "l", "suudelma": "l", "kaipuu": "l", "ilo": "l",
    "onni": "l", "unelma": "l", "toivo": "l", "sielu": "ld", "morsian": "l",
    "sulho": "l", "neito": "l", "kulta": "l", "huuli": "l", "silmä": "l",
    "käsi": "lt", "laulu": "l", "runo": "l", "tanssi": "l", "muisto": "ld",
    "tukka": "l", "ruusu": "l",
    "kuolema": "d", "suru": "d", "hauta": "d", "risti": "d", "tuska": "d",
    "kyynel": "d", "itku": "d", "kaiho": "dl", "murhe": "d", "kipu": "d",
    "pimeys": "ds", "tuho": "d", "sota": "d", "miekka": "d", "veri": "d",
    "haava": "d", "kohtalo": "d", "aave": "d", "varis": "d",
    "työ": "t", "pelto": "t", "aura": "t", "vilja": "t", "sirppi": "t",
    "hevonen": "t", "lehmä": "t", "kenttä": "t", "niitty": "t", "kirves": "t",
    "kuokka": "t", "maa": "t", "multa": "t", "vako": "t", "kynttilä": "h",
    "hiki": "t", "renki": "t", "seppä": "t", "paja": "t", "sirkka": "f",
    "luu": "d", "suu": "l", "kuusi": "f", "juuri": "f", "sammal": "f",
}

ADJS = {
    "syvä": "w", "märkä": "w", "kylmä": "wd", "sininen": "ws", "kirkas": "s",
    "tyyni": "w", "vihreä": "f", "tumma": "fd", "korkea": "f", "villi": "f",
    "heikko": "fd", "pieni": "h", "suuri": "f", "vanha": "h", "musta": "d",
    "hiljainen": "s", "kaukainen": "s", "kalpea": "sd", "synkkä": "d",
    "lämmin": "hl", "köyhä": "h", "rakas": "l", "oma": "h", "harmaa": "h",
    "kaunis": "l", "nuori": "l", "suloinen": "l", "hellä": "l",
    "surullinen": "d", "yksinäinen": "d", "katkera": "d", "raskas": "t",
    "ahkera": "t", "väsynyt": "t", "kova": "t", "valkea": "s",
}

VERBS = {
    "soutaa": "w", "kastua": "w", "vuotaa": "w", "sataa": "ws",
    "kimaltaa": "w", "hukkua": "wd", "kellua": "w",
    "kasvaa": "f", "kukkia": "fl", "laulaa": "l", "seisoa": "h",
    "kätkeä": "f", "kulkea": "f", "lentää": "fs", "odottaa": "h",
    "loistaa": "s", "paistaa": "s", "tuikkia": "s", "sammua": "sd",
    "hohtaa": "s", "laskea": "s", "puhaltaa": "sw",
    "asua": "h", "istua": "h", "leipoa": "h", "kutoa": "h", "rakentaa": "ht",
    "nukkua": "h", "palaa": "h",
    "rakastaa": "l", "muistaa": "l", "itkeä": "d", "toivoa": "l",
    "tanssia": "l", "kuolla": "d", "kaatua": "d", "huutaa": "d",
    "kärsiä": "d", "kyntää": "t", "kylvää": "t", "niittää": "t",
    "raataa": "t", "kantaa": "t", "kaivaa": "t",
}

ADVS = ["hiljaa", "aina", "taas", "yhä", "kauan", "nyt", "vielä", "ennen",
        "pian", "kauas", "ylös", "alas", "yksin", "jo"]

FUNCTION = {"ja": "CCONJ", "mutta": "CCONJ", "kun": "SCONJ", "se": "PRON",
            "minä": "PRON", "sinä": "PRON", "on": "AUX", "en": "AUX"}

# Hand-written forms for words the simple rules below get wrong.
NOUN_OVERRIDES = {
    "vesi": ("veden", "vettä", "vedet"),
    "meri": ("meren", "merta", "meret"),
    "järvi": ("järven", "järveä", "järvet"),
    "laine": ("laineen", "lainetta", "laineet"),
    "sade": ("sateen", "sadetta", "sateet"),
    "joki": ("joen", "jokea", "joet"),
    "lumi": ("lumen", "lunta", "lumet"),
    "saari": ("saaren", "saarta", "saaret"),
    "vene": ("veneen", "venettä", "veneet"),
    "lähde": ("lähteen", "lähdettä", "lähteet"),
    "lampi": ("lammen", "lampea", "lammet"),
    "kallio": ("kallion", "kalliota", "kalliot"),
    "kivi": ("kiven", "kiveä", "kivet"),
    "susi": ("suden", "sutta", "sudet"),
    "tähti": ("tähden", "tähteä", "tähdet"),
    "taivas": ("taivaan", "taivasta", "taivaat"),
    "pilvi": ("pilven", "pilveä", "pilvet"),
    "tuuli": ("tuulen", "tuulta", "tuulet"),
    "aurinko": ("auringon", "aurinkoa", "auringot"),
    "talvi": ("talven", "talvea", "talvet"),
    "koti": ("kodin", "kotia", "kodit"),
    "ovi": ("oven", "ovea", "ovet"),
    "äiti": ("äidin", "äitiä", "äidit"),
    "lapsi": ("lapsen", "lasta", "lapset"),
    "uuni": ("uunin", "uunia", "uunit"),
    "sydän": ("sydämen", "sydäntä", "sydämet"),
    "rakkaus": ("rakkauden", "rakkautta", "rakkaudet"),
    "onni": ("onnen", "onnea", "onnet"),
    "morsian": ("morsiamen", "morsianta", "morsiamet"),
    "huuli": ("huulen", "huulta", "huulet"),
    "käsi": ("käden", "kättä", "kädet"),
    "tanssi": ("tanssin", "tanssia", "tanssit"),
    "risti": ("ristin", "ristiä", "ristit"),
    "kyynel": ("kyyneleen", "kyyneltä", "kyyneleet"),
    "murhe": ("murheen", "murhetta", "murheet"),
    "pimeys": ("pimeyden", "pimeyttä", "pimeydet"),
    "veri": ("veren", "verta", "veret"),
    "aave": ("aaveen", "aavetta", "aaveet"),
    "varis": ("variksen", "varista", "varikset"),
    "sirppi": ("sirpin", "sirppiä", "sirpit"),
    "hevonen": ("hevosen", "hevosta", "hevoset"),
    "kirves": ("kirveen", "kirvestä", "kirveet"),
    "hiki": ("hien", "hikeä", "hiet"),
    "renki": ("rengin", "renkiä", "rengit"),
    "kuusi": ("kuusen", "kuusta", "kuuset"),
    "juuri": ("juuren", "juurta", "juuret"),
    "sammal": ("sammaleen", "sammalta", "sammaleet"),
    "kaipuu": ("kaipuun", "kaipuuta", "kaipuut"),
    "itku": ("itkun", "itkua", "itkut"),
    "tuska": ("tuskan", "tuskaa", "tuskat"),
}

ADJ_OVERRIDES = {
    # nominative singular, genitive, partitive, nominative plural
    "märkä": ("märän", "märkää", "märät"),
    "sininen": ("sinisen", "sinistä", "siniset"),
    "kirkas": ("kirkkaan", "kirkasta", "kirkkaat"),
    "tyyni": ("tyynen", "tyyntä", "tyynet"),
    "villi": ("villin", "villiä", "villit"),
    "pieni": ("pienen", "pientä", "pienet"),
    "suuri": ("suuren", "suurta", "suuret"),
    "hiljainen": ("hiljaisen", "hiljaista", "hiljaiset"),
    "kaukainen": ("kaukaisen", "kaukaista", "kaukaiset"),
    "lämmin": ("lämpimän", "lämmintä", "lämpimät"),
    "rakas": ("rakkaan", "rakasta", "rakkaat"),
    "kaunis": ("kauniin", "kaunista", "kauniit"),
    "nuori": ("nuoren", "nuorta", "nuoret"),
    "suloinen": ("suloisen", "suloista", "suloiset"),
    "surullinen": ("surullisen", "surullista", "surulliset"),
    "yksinäinen": ("yksinäisen", "yksinäistä", "yksinäiset"),
    "raskas": ("raskaan", "raskasta", "raskaat"),
    "väsynyt": ("väsyneen", "väsynyttä", "väsyneet"),
}

VERB_OVERRIDES = {"kuolla": "kuolee"}

ABSTRACT = {
    "rakkaus", "kaipuu", "ilo", "onni", "unelma", "toivo", "sielu", "muisto",
    "kuolema", "suru", "tuska", "kaiho", "murhe", "kipu", "pimeys", "tuho",
    "kohtalo", "työ", "laulu", "runo", "aave", "tanssi", "itku", "sota",
}

POSITIVE = {
    "valo": 0.8, "aurinko": 0.7, "kesä": 0.6, "kukka": 0.5, "rakkaus": 0.9,
    "ilo": 1.0, "onni": 1.0, "unelma": 0.6, "toivo": 0.8, "suudelma": 0.7,
    "kulta": 0.5, "ruusu": 0.5, "laulu": 0.4, "koti": 0.6, "äiti": 0.5,
    "kaunis": 0.9, "suloinen": 0.8, "hellä": 0.7, "lämmin": 0.6,
    "rakas": 0.9, "kirkas": 0.5, "rakastaa": 0.9, "laulaa": 0.5,
    "tanssia": 0.6, "loistaa": 0.5, "kukkia": 0.6, "nuori": 0.3,
    "morsian": 0.6, "aamu": 0.3, "leipä": 0.2,
}

NEGATIVE = {
    "kuolema": -1.0, "suru": -0.9, "hauta": -0.7, "tuska": -0.9,
    "kyynel": -0.6, "itku": -0.7, "murhe": -0.8, "kipu": -0.8,
    "pimeys": -0.6, "tuho": -0.9, "sota": -1.0, "veri": -0.5, "haava": -0.6,
    "aave": -0.4, "halla": -0.4, "myrsky": -0.3, "synkkä": -0.7,
    "surullinen": -0.9, "yksinäinen": -0.7, "katkera": -0.8, "kylmä": -0.3,
    "musta": -0.3, "kalpea": -0.3, "väsynyt": -0.4, "itkeä": -0.7,
    "kuolla": -1.0, "kaatua": -0.5, "huutaa": -0.4, "kärsiä": -0.8,
    "hukkua": -0.8, "sammua": -0.4, "heikko": -0.3,
}

RHYMES = [
    ["kuu", "puu", "suu", "luu"],
    ["yö", "työ"],
    ["talo", "salo", "valo"],
    ["kukka", "tukka"],
    ["ranta", "kanta"],
    ["kala", "halla", "paja"],
]


def harmony(word):
    return "a" if any(c in BACK for c in word) else "ä"


def weak_grade(word):
    """Consonant gradation in the last syllable, common patterns only."""
    stem, last = word[:-1], word[-1]
    for strong, weak in (("kk", "k"), ("pp", "p"), ("tt", "t"), ("nt", "nn"),
                         ("lt", "ll"), ("rt", "rr"), ("mp", "mm"),
                         ("nk", "ng"), ("ht", "hd"), ("lk", "l")):
        if stem.endswith(strong):
            return stem[: -len(strong)] + weak + last
    if len(stem) >= 2 and stem[-2] in VOWELS:
        if stem[-1] == "t":
            return stem[:-1] + "d" + last
        if stem[-1] == "p":
            return stem[:-1] + "v" + last
        if stem[-1] == "k":
            return stem[:-1] + last
    return word


def nominal_forms(word, overrides):
    if word in overrides:
        gen, par, plur = overrides[word]
        return word, gen, par, plur
    if word[-1] not in VOWELS:
        raise ValueError(f"no rule for consonant-final {word}")
    if word[-1] in "ie" and len(word) > 3:
        raise ValueError(f"no rule for {word}")
    vowel = harmony(word)
    long_final = len(word) >= 2 and (word[-2] == word[-1] or word[-2:] in ("uo", "yö", "ie"))
    weak = weak_grade(word)
    par = word + ("t" + vowel if long_final else vowel)
    return word, weak + "n", par, weak + "t"


def verb_3sg(inf):
    if inf in VERB_OVERRIDES:
        return VERB_OVERRIDES[inf]
    stem = inf[:-1]
    if stem[-1] not in VOWELS:
        raise ValueError(f"no rule for {inf}")
    return stem + stem[-1] if stem[-1] != stem[-2] else stem


class Lexicon:
    def __init__(self):
        self.forms = {}  # (lemma, tags) -> surface
        self.pos = {}
        for lemma in NOUNS:
            nom, gen, par, plur = nominal_forms(lemma, NOUN_OVERRIDES)
            self.pos[lemma] = "NOUN"
            self.forms[(lemma, NOUN_SG_NOM)] = nom
            self.forms[(lemma, NOUN_SG_GEN)] = gen
            self.forms[(lemma, NOUN_SG_PAR)] = par
            self.forms[(lemma, NOUN_PL_NOM)] = plur
        for lemma in ADJS:
            nom, gen, par, plur = nominal_forms(lemma, ADJ_OVERRIDES)
            self.pos[lemma] = "ADJ"
            self.forms[(lemma, ADJ_SG_NOM)] = nom
            self.forms[(lemma, ADJ_SG_GEN)] = gen
            self.forms[(lemma, ADJ_SG_PAR)] = par
        for lemma in VERBS:
            self.pos[lemma] = "VERB"
            self.forms[(lemma, VERB_3SG)] = verb_3sg(lemma)
        for lemma in ADVS:
            self.pos[lemma] = "ADV"
        for lemma, pos in FUNCTION.items():
            self.pos[lemma] = pos


def topics_of(lemma):
    for table in (NOUNS, ADJS, VERBS):
        if lemma in table:
            return table[lemma]
    return ""


def by_topic(table, topic):
    return sorted(w for w, t in table.items() if topic in t)


class Verse:
    def __init__(self):
        self.tokens = []  # dicts

    def add(self, form, lemma, upos, feats, head, deprel):
        self.tokens.append(dict(form=form, lemma=lemma, upos=upos,
                                feats=feats, head=head, deprel=deprel, misc="_"))
        return len(self.tokens)

    def punct(self, mark, head):
        self.tokens[-1]["misc"] = "SpaceAfter=No"
        self.add(mark, mark, "PUNCT", "_", head, "punct")


def build_verse(rng, lex, topics, style, end_noun=None):
    """One annotated verse. Word order is free in Finnish verse, which
    lets rhyme-carrying nouns sit at the end."""
    v = Verse()
    topic = rng.choice(topics)
    nouns = by_topic(NOUNS, topic)
    adjs = by_topic(ADJS, topic) or sorted(ADJS)
    verbs = by_topic(VERBS, topic) or sorted(VERBS)
    noun = end_noun or rng.choice(nouns)
    verb = rng.choice(verbs)
    adj = rng.choice(adjs)
    f = lex.forms
    if style == "1800":
        pattern = rng.choice(["adv-verb-adj-noun", "verb-adj-noun",
                              "gen-verb-noun"])
        if pattern == "adv-verb-adj-noun":
            adv = rng.choice(ADVS)
            v.add(adv, adv, "ADV", "_", 2, "advmod")
            v.add(f[(verb, VERB_3SG)], verb, "VERB", VERB_3SG, 0, "root")
            v.add(f[(adj, ADJ_SG_NOM)], adj, "ADJ", ADJ_SG_NOM, 4, "amod")
            v.add(f[(noun, NOUN_SG_NOM)], noun, "NOUN", NOUN_SG_NOM, 2, "nsubj")
        elif pattern == "verb-adj-noun":
            v.add(f[(verb, VERB_3SG)], verb, "VERB", VERB_3SG, 0, "root")
            v.add(f[(adj, ADJ_SG_NOM)], adj, "ADJ", ADJ_SG_NOM, 3, "amod")
            v.add(f[(noun, NOUN_SG_NOM)], noun, "NOUN", NOUN_SG_NOM, 1, "nsubj")
        else:
            owner = rng.choice(sorted(NOUNS))
            v.add(f[(owner, NOUN_SG_GEN)], owner, "NOUN", NOUN_SG_GEN, 3, "nmod:poss")
            v.add(f[(verb, VERB_3SG)], verb, "VERB", VERB_3SG, 0, "root")
            v.add(f[(noun, NOUN_SG_NOM)], noun, "NOUN", NOUN_SG_NOM, 2, "nsubj")
    else:
        other = rng.choice(sorted(NOUNS))
        pattern = rng.choice(["subj-verb-obj-adv", "gen-subj-verb-obj",
                              "adj-subj-verb-adv-obj"])
        if pattern == "subj-verb-obj-adv":
            v.add(f[(noun, NOUN_SG_NOM)], noun, "NOUN", NOUN_SG_NOM, 2, "nsubj")
            v.add(f[(verb, VERB_3SG)], verb, "VERB", VERB_3SG, 0, "root")
            v.add(f[(other, NOUN_SG_PAR)], other, "NOUN", NOUN_SG_PAR, 2, "obj")
            adv = rng.choice(ADVS)
            v.add(adv, adv, "ADV", "_", 2, "advmod")
        elif pattern == "gen-subj-verb-obj":
            owner = rng.choice(sorted(NOUNS))
            v.add(f[(owner, NOUN_SG_GEN)], owner, "NOUN", NOUN_SG_GEN, 2, "nmod:poss")
            v.add(f[(noun, NOUN_SG_NOM)], noun, "NOUN", NOUN_SG_NOM, 3, "nsubj")
            v.add(f[(verb, VERB_3SG)], verb, "VERB", VERB_3SG, 0, "root")
            v.add(f[(other, NOUN_SG_PAR)], other, "NOUN", NOUN_SG_PAR, 3, "obj")
        else:
            v.add(f[(adj, ADJ_SG_NOM)], adj, "ADJ", ADJ_SG_NOM, 2, "amod")
            v.add(f[(noun, NOUN_SG_NOM)], noun, "NOUN", NOUN_SG_NOM, 3, "nsubj")
            v.add(f[(verb, VERB_3SG)], verb, "VERB", VERB_3SG, 0, "root")
            adv = rng.choice(ADVS)
            v.add(adv, adv, "ADV", "_", 3, "advmod")
            v.add(f[(other, NOUN_SG_PAR)], other, "NOUN", NOUN_SG_PAR, 3, "obj")
    root = next(i + 1 for i, t in enumerate(v.tokens) if t["deprel"] == "root")
    if rng.random() < 0.5:
        v.punct(rng.choice([",", "."]), root)
    return v


def build_poem(rng, lex, era, stanzas):
    topic_pool = "wfshl" if era == "1800" else "dtlsw"
    out = []
    for _ in range(stanzas):
        topics = rng.sample(topic_pool, 2)
        verses = []
        if era == "1800":
            for _pair in range(2):
                family = rng.choice(RHYMES)
                a, b = rng.sample(family, 2) if len(family) > 1 else (family[0],) * 2
                for end in (a, b):
                    if end in NOUNS:
                        verses.append(build_verse(rng, lex, topics, era, end_noun=end))
                    else:
                        verses.append(build_verse(rng, lex, topics, era))
        else:
            for _ in range(rng.choice([3, 4])):
                verses.append(build_verse(rng, lex, topics, era))
        out.append(verses)
    return out


def heikko_peikko(lex):
    """Fixed stanza carrying the canonical rhyme pair."""
    f = lex.forms
    v1, v2 = Verse(), Verse()
    v1.add(f[("nukkua", VERB_3SG)], "nukkua", "VERB", VERB_3SG, 0, "root")
    v1.add(f[("vanha", ADJ_SG_NOM)], "vanha", "ADJ", ADJ_SG_NOM, 3, "amod")
    v1.add(f[("peikko", NOUN_SG_NOM)], "peikko", "NOUN", NOUN_SG_NOM, 1, "nsubj")
    v2.add(f[("vesi", NOUN_SG_GEN)], "vesi", "NOUN", NOUN_SG_GEN, 2, "nmod:poss")
    v2.add(f[("kala", NOUN_SG_NOM)], "kala", "NOUN", NOUN_SG_NOM, 0, "root")
    v2.add("on", "olla", "AUX", VERB_3SG, 2, "cop")
    v2.add(f[("heikko", ADJ_SG_NOM)], "heikko", "ADJ", ADJ_SG_NOM, 2, "amod")
    return [[v1, v2]]


def write_corpus(path, poems):
    with open(path, "w", encoding="utf-8") as out:
        for pid, era, stanzas in poems:
            out.write(f"# poem_id = {pid}\n")
            if era:
                out.write(f"# era = {era}\n")
            for si, verses in enumerate(stanzas):
                if si > 0:
                    out.write("# stanza\n")
                for v in verses:
                    for i, t in enumerate(v.tokens, 1):
                        cols = [str(i), t["form"], t["lemma"], t["upos"], "_",
                                t["feats"], str(t["head"]), t["deprel"], "_", t["misc"]]
                        out.write("\t".join(cols) + "\n")
                    out.write("\n")


def make_embeddings(rng, lemmas, dim):
    centers = {}
    for topic in "wfshldt":
        vec = [rng.gauss(0, 1) for _ in range(dim)]
        norm = math.sqrt(sum(x * x for x in vec))
        centers[topic] = [x / norm for x in vec]
    vectors = {}
    for lemma in lemmas:
        topics = topics_of(lemma)
        base = [0.0] * dim
        for t in topics:
            base = [b + c for b, c in zip(base, centers[t])]
        noise = 0.35 if topics else 1.0
        vectors[lemma] = [b + rng.gauss(0, noise / math.sqrt(dim) * 2) for b in base]
    return vectors


def make_ngrams(rng, n_draws):
    pools = {t: by_topic(NOUNS, t) + by_topic(ADJS, t) + by_topic(VERBS, t)
             for t in "wfshldt"}
    counts = {}
    topics = list(pools)
    for _ in range(n_draws):
        primary = rng.choice(topics)
        second = rng.choice(topics) if rng.random() < 0.35 else primary
        gram = []
        for i in range(5):
            if rng.random() < 0.2:
                gram.append(rng.choice(ADVS + list(FUNCTION)))
            else:
                gram.append(rng.choice(pools[primary if i % 2 == 0 else second]))
        key = " ".join(gram)
        counts[key] = counts.get(key, 0) + rng.randint(1, 20)
    return counts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "toy"))
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--poems-per-era", type=int, default=12)
    ap.add_argument("--dim", type=int, default=32)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    lex = Lexicon()

    poems = [("hp0", "1800", heikko_peikko(lex))]
    for era in ("1800", "1900"):
        for i in range(args.poems_per_era):
            poems.append((f"p{era}_{i:02d}", era, build_poem(rng, lex, era, 2)))
    write_corpus(out / "corpus.conllu", poems)

    lemmas = sorted(lex.pos)
    vectors = make_embeddings(rng, lemmas, args.dim)
    with open(out / "embeddings.txt", "w", encoding="utf-8") as f:
        f.write(f"{len(lemmas)} {args.dim}\n")
        for w in lemmas:
            f.write(w + " " + " ".join(f"{x:.6f}" for x in vectors[w]) + "\n")

    with open(out / "ngrams.tsv", "w", encoding="utf-8") as f:
        for gram, c in sorted(make_ngrams(rng, 6000).items()):
            f.write(f"{gram}\t{c}\n")

    with open(out / "concreteness.tsv", "w", encoding="utf-8") as f:
        for w in lemmas:
            pos = lex.pos[w]
            if pos == "NOUN":
                score = rng.uniform(1.4, 2.8) if w in ABSTRACT else rng.uniform(3.4, 5.0)
            elif pos == "ADJ":
                score = rng.uniform(2.0, 4.2)
            elif pos == "VERB":
                score = rng.uniform(1.8, 3.9)
            else:
                continue
            f.write(f"{w}\t{score:.2f}\n")

    with open(out / "sentiment.tsv", "w", encoding="utf-8") as f:
        for w, p in sorted({**POSITIVE, **NEGATIVE}.items()):
            f.write(f"{w}\t{p:.2f}\n")

    with open(out / "morphology.tsv", "w", encoding="utf-8") as f:
        for (lemma, tags), surface in sorted(lex.forms.items()):
            f.write(f"{lemma}\t{tags}\t{surface}\n")
        f.write(f"olla\t{VERB_3SG}\ton\n")

    with open(out / "pos.tsv", "w", encoding="utf-8") as f:
        for w in lemmas:
            f.write(f"{w}\t{lex.pos[w]}\n")
        f.write("olla\tAUX\n")


if __name__ == "__main__":
    main()
