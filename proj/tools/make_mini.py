#!/usr/bin/env python3
"""Regenerate data/mini: the 20-pair demo corpus with its dictionary, POS
lexicon, references, synthetic ratings and synthetic word vectors.

The sentences and dictionary are hand-written; vectors and ratings are drawn
from fixed seeds so the output is stable.
"""

import json
import os
import random
import sys

import numpy as np

PAIRS = [
    ("m01", "The house is big .", "घर बड़ा है ।", "ghar big hai ."),
    ("m02", "The book is on the table .", "किताब मेज़ पर है ।", "book table par hai ."),
    ("m03", "My mother cooks delicious food .", "मेरी माँ स्वादिष्ट खाना बनाती है ।",
     "meri mother delicious khana banati hai ."),
    ("m04", "The school is near the river .", "स्कूल नदी के पास है ।", "school river ke paas hai ."),
    ("m05", "The children play in the garden .", "बच्चे बगीचे में खेलते हैं ।", "children garden mein khelte hain ."),
    ("m06", "This city is very beautiful .", "यह शहर बहुत सुंदर है ।", "yeh city bahut beautiful hai ."),
    ("m07", "The doctor gave me medicine .", "डॉक्टर ने मुझे दवा दी ।", "doctor ne mujhe medicine di ."),
    ("m08", "The weather is pleasant today .", "आज मौसम सुहावना है ।", "aaj weather pleasant hai ."),
    ("m09", "I read the newspaper every morning .", "मैं हर सुबह अखबार पढ़ता हूँ ।",
     "main har morning newspaper padhta hoon ."),
    ("m10", "The train arrived at the station .", "ट्रेन स्टेशन पर पहुँची ।", "train station par pahunchi ."),
    ("m11", "Education is important for development .", "विकास के लिए शिक्षा महत्वपूर्ण है ।",
     "development ke liye education important hai ."),
    ("m12", "The government announced a new policy .", "सरकार ने एक नई नीति की घोषणा की ।",
     "government ne ek new policy announce ki ."),
    ("m13", "The old man walked slowly .", "बूढ़ा आदमी धीरे चला ।", "old man dheere chala ."),
    ("m14", "The house has a big garden .", "घर में एक बड़ा बगीचा है ।", "house mein ek big garden hai ."),
    ("m15", "My friend bought a new book .", "मेरे दोस्त ने एक नई किताब खरीदी ।",
     "mere friend ne ek new book kharidi ."),
    ("m16", "The river water is clean .", "नदी का पानी साफ़ है ।", "river ka water clean hai ."),
    ("m17", "Public transport is cheap in this city .", "इस शहर में सार्वजनिक परिवहन सस्ता है ।",
     "is city mein public transport cheap hai ."),
    ("m18", "The teacher praised the intelligent student .", "शिक्षक ने बुद्धिमान छात्र की प्रशंसा की ।",
     "teacher ne intelligent student ki tareef ki ."),
    ("m19", "The market is crowded in the evening .", "शाम को बाज़ार में भीड़ होती है ।",
     "evening ko market mein bheed hoti hai ."),
    ("m20", "Clean water is important for health .", "स्वास्थ्य के लिए साफ़ पानी महत्वपूर्ण है ।",
     "health ke liye clean water important hai ."),
]

SEED = [
    ("house", "घर"), ("book", "किताब"), ("table", "मेज़"), ("mother", "माँ"), ("delicious", "स्वादिष्ट"),
    ("food", "खाना"), ("school", "स्कूल"), ("river", "नदी"), ("children", "बच्चे"), ("garden", "बगीचे"),
    ("garden", "बगीचा"), ("city", "शहर"), ("beautiful", "सुंदर"), ("doctor", "डॉक्टर"), ("medicine", "दवा"),
    ("weather", "मौसम"), ("pleasant", "सुहावना"), ("newspaper", "अखबार"), ("morning", "सुबह"),
    ("train", "ट्रेन"), ("station", "स्टेशन"), ("education", "शिक्षा"), ("important", "महत्वपूर्ण"),
    ("development", "विकास"), ("government", "सरकार"), ("new", "नई"), ("policy", "नीति"), ("old", "बूढ़ा"),
    ("man", "आदमी"), ("friend", "दोस्त"), ("water", "पानी"), ("clean", "साफ़"), ("public", "सार्वजनिक"),
    ("transport", "परिवहन"), ("cheap", "सस्ता"), ("teacher", "शिक्षक"), ("intelligent", "बुद्धिमान"),
    ("student", "छात्र"), ("market", "बाज़ार"), ("evening", "शाम"), ("health", "स्वास्थ्य"), ("big", "बड़ा"),
]

# Pairs the seed lacks; their vectors are planted so that the mapped Hindi
# vector lands near the English one.
HIDDEN = [("today", "आज"), ("slowly", "धीरे"), ("crowded", "भीड़"), ("play", "खेलते"), ("every", "हर")]

POS = {
    "NOUN": ["house", "book", "table", "mother", "food", "school", "river", "children", "garden", "city", "doctor",
             "medicine", "weather", "newspaper", "morning", "train", "station", "education", "development",
             "government", "policy", "man", "friend", "water", "transport", "teacher", "student", "market",
             "evening", "health", "today"],
    "ADJ": ["big", "delicious", "beautiful", "pleasant", "important", "new", "old", "clean", "public", "cheap",
            "intelligent", "crowded"],
    "VERB": ["is", "cooks", "play", "gave", "read", "arrived", "announced", "walked", "has", "bought", "praised"],
}

HINDI_STOPWORDS = ["है", "हैं", "में", "पर", "के", "का", "की", "को", "ने", "से", "एक", "यह", "इस", "लिए"]

DIM = 32


def write_vectors(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{len(rows)} {DIM}\n")
        for word, vec in rows:
            f.write(word + " " + " ".join(f"{v:.6f}" for v in vec) + "\n")


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "pairs.jsonl"), "w", encoding="utf-8", newline="\n") as f:
        for pid, en, hi, _ in PAIRS:
            f.write(json.dumps({"id": pid, "en": en, "hi": hi}, ensure_ascii=False) + "\n")
    with open(os.path.join(out_dir, "refs.tsv"), "w", encoding="utf-8", newline="\n") as f:
        for pid, _, _, ref in PAIRS:
            f.write(f"{pid}\t{ref}\n")
    with open(os.path.join(out_dir, "seed_dict.tsv"), "w", encoding="utf-8", newline="\n") as f:
        for en, hi in SEED:
            f.write(f"{en}\t{hi}\n")
    with open(os.path.join(out_dir, "pos_lexicon.tsv"), "w", encoding="utf-8", newline="\n") as f:
        for tag, words in POS.items():
            for w in words:
                f.write(f"{w}\t{tag}\n")
    with open(os.path.join(out_dir, "stopwords_hi.txt"), "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(HINDI_STOPWORDS) + "\n")

    rng = np.random.default_rng(20)
    english_words = []
    for _, en, _, _ in PAIRS:
        for w in en.lower().split():
            if w != "." and w not in english_words:
                english_words.append(w)
    en_vec = {w: rng.standard_normal(DIM) for w in english_words}
    rotation, _ = np.linalg.qr(rng.standard_normal((DIM, DIM)))
    hi_vec = {}
    for en, hi in SEED + HIDDEN:
        if hi not in hi_vec:
            hi_vec[hi] = en_vec[en] @ rotation.T + 0.05 * rng.standard_normal(DIM)
    for _, _, hi, _ in PAIRS:
        for w in hi.split():
            if w != "।" and w not in hi_vec:
                hi_vec[w] = rng.standard_normal(DIM)
    write_vectors(os.path.join(out_dir, "en.vec"), [(w, en_vec[w]) for w in english_words])
    write_vectors(os.path.join(out_dir, "hi.vec"), list(hi_vec.items()))

    # Two raters per generated sentence. Quality leans on the pair index so the
    # analytics have something to correlate.
    r = random.Random(7)
    with open(os.path.join(out_dir, "ratings.jsonl"), "w", encoding="utf-8", newline="\n") as f:
        for k, (pid, _, _, _) in enumerate(PAIRS):
            for method in ("WAC", "PAC"):
                sid = f"{pid}#{method}"
                base = 2 + (k * 8) // (len(PAIRS) - 1)
                for rater in ("r1", "r2"):
                    quality = min(10, max(2, base + r.choice([-1, 0, 0, 1])))
                    label = "Correct" if quality >= 5 or r.random() < 0.3 else "Incorrect"
                    dcm = r.randint(6, 10)
                    ra = r.randint(6, 10)
                    for scale, value in (("QUALITY", quality), ("LABEL", label), ("DCM", dcm), ("RA", ra)):
                        rec = {"sentence_id": sid, "rater_id": rater, "scale": scale, "value": value}
                        f.write(json.dumps(rec, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data", "mini"))
