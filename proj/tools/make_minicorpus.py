#!/usr/bin/env python3
"""Generates the bundled 200-campaign synthetic mini-corpus.

The funding outcome depends only on which strategy sentences a description
contains (the sentences the mock LLM flags), plus Bernoulli noise. Goal,
organizer, location, and pandemic columns carry no signal. Output:
campaigns.jsonl, acs.csv, covid.csv in data/minicorpus, plus choices.jsonl,
synthetic pairwise choice records for the experiment analysis.

    python3 tools/make_minicorpus.py [--out data/minicorpus] [--seed 20200122]
"""
import argparse
import csv
import datetime as dt
import json
import math
import os
import random

CITIES = [
    ("Austin", "TX"), ("Houston", "TX"), ("Denver", "CO"), ("Boulder", "CO"),
    ("Seattle", "WA"), ("Tacoma", "WA"), ("Portland", "OR"), ("Chicago", "IL"),
    ("Atlanta", "GA"), ("Savannah", "GA"), ("Brooklyn", "NY"), ("Buffalo", "NY"),
]
# Campaigns from these cities have no ACS row (exercises missing markers).
NO_ACS = {("Tacoma", "WA"), ("Savannah", "GA")}

OWNERS = ["Maria", "James", "Aisha", "Chen", "Luis", "Priya", "Tom", "Keiko", "Omar",
          "Grace", "Diego", "Hannah", "Sam", "Nadia", "Victor", "Rosa"]
KINDS = ["bakery", "cafe", "barber shop", "bookstore", "yoga studio", "restaurant",
         "florist", "brewery", "food truck", "hair salon", "boxing gym", "tailor shop"]

FILLER = [
    "Our {kind} sits on a quiet corner where neighbors stop by on their way to work.",
    "We make everything by hand and keep our menu short and simple.",
    "Most of our regulars know each other by name and like to chat at the counter.",
    "The pandemic forced us to close the dining room in March.",
    "We moved to pickup orders and tried to keep our hours steady.",
    "Our suppliers are local farms and small family producers from the region.",
    "On weekends we host small events for families in the neighborhood.",
    "We repainted the walls ourselves and built the shelves from reclaimed wood.",
    "Every morning starts at five with prep work and a pot of coffee.",
    "Our space is small, with six tables and a window that faces the park.",
    "We have adapted our work to follow every public health order.",
    "The money raised will pay for supplies, utilities, and insurance.",
    "We would love to welcome everyone back when it is safe to gather.",
    "Our kids help out after school by folding boxes and sweeping the floor.",
    "Several local artists display their work on our walls each month.",
    "We keep a community board by the door for flyers and notices.",
    "Our online orders have helped a little, but they cover only part of the costs.",
    "Local schools sometimes visit us for field trips and short workshops.",
    "We try to keep our prices fair so that everyone can come in.",
    "The street outside has been quiet for months now.",
]

STRATEGY = {
    "gratitude": "Thank you for reading our story and for any support you can give.",
    "urgency": "We need help immediately to keep the lights on this month.",
    "match": "If we raise $500, GoFundMe's Small Business Relief Initiative will match $500 for us.",
    "employees": "We employ {k} staff members who depend on these jobs to support their families.",
    "rent": "The funds will cover our rent for the next two months.",
    "longer_2y": "We opened our doors {n} years ago and have served this neighborhood ever since.",
    "new_business": "We are a new business and just opened last autumn.",
    "social_better": "Customers tell us our food is better than anything else nearby.",
    "self_worse": "Sales have dropped by more than half since the spring.",
    "extrinsic": "Every donor will receive a small gift card from us.",
}
RATES = {"gratitude": 0.40, "urgency": 0.30, "match": 0.20, "employees": 0.45, "rent": 0.35,
         "longer_2y": 0.45, "new_business": 0.12, "social_better": 0.15, "self_worse": 0.30,
         "extrinsic": 0.12}
COEF = {"gratitude": 5.2, "urgency": 4.4, "match": 4.8, "longer_2y": 4.4, "employees": 3.6,
        "self_worse": -2.4, "extrinsic": 1.2}
INTERCEPT = -6.0

ACS_COLUMNS = [
    ("population_density", "count", 500, 12000), ("pct_female", "share", 47, 53),
    ("pct_under_5", "share", 4, 8), ("pct_under_18", "share", 15, 27),
    ("pct_over_65", "share", 9, 20), ("pct_two_or_more_races", "share", 2, 6),
    ("pct_white_not_hispanic", "share", 25, 80), ("pct_asian", "share", 1, 15),
    ("pct_hispanic", "share", 4, 40), ("pct_white", "share", 40, 85),
    ("pct_black", "share", 2, 45), ("pct_native_hawaiian_pacific", "share", 0, 1),
    ("pct_american_indian_alaska_native", "share", 0, 2), ("pct_bachelors", "share", 18, 65),
    ("housing_units", "count", 50000, 1200000), ("persons_per_household", "count", 2.0, 3.0),
    ("owner_occupied_rate", "share", 30, 70), ("households", "count", 45000, 1100000),
    ("pct_same_house_1yr", "share", 75, 90), ("pct_households_computer", "share", 85, 97),
    ("pct_households_broadband", "share", 75, 93), ("median_gross_rent", "count", 800, 1900),
    ("per_capita_income", "count", 25000, 60000), ("median_household_income", "count", 40000, 110000),
    ("pct_poverty", "share", 7, 25), ("median_home_value", "count", 150000, 800000),
    ("owner_costs_with_mortgage", "count", 1200, 3200), ("owner_costs_without_mortgage", "count", 400, 900),
    ("firms_all", "count", 10000, 250000), ("firms_men_owned", "count", 5000, 130000),
    ("firms_nonminority_owned", "count", 5000, 150000), ("retail_sales", "count", 1e9, 3e10),
    ("retail_sales_per_capita", "count", 9000, 25000), ("health_care_receipts", "count", 5e8, 2e10),
    ("transportation_receipts", "count", 1e8, 5e9), ("employer_establishments", "count", 5000, 120000),
    ("annual_payroll", "count", 1e9, 9e10), ("pct_change_employment", "signed", -3, 6),
    ("nonemployer_establishments", "count", 10000, 300000), ("mean_travel_time", "count", 18, 40),
    ("pct_civilian_labor_force", "share", 58, 72), ("pct_female_labor_force", "share", 54, 66),
    ("veterans", "count", 5000, 150000), ("pct_foreign_born", "share", 4, 38),
    ("pct_other_language", "share", 8, 45), ("pct_disability_under_65", "share", 5, 11),
]

WINDOW = (dt.date(2020, 1, 22), dt.date(2020, 3, 31), dt.date(2020, 4, 30), dt.date(2020, 12, 31))


def sigmoid(x):
    return 1.0 / (1.0 + math.exp(-x))


def pick_date(rng):
    start, train_end, val_end, end = WINDOW
    part = rng.choices([0, 1, 2], weights=[0.5, 0.2, 0.3])[0]
    lo, hi = [(start, train_end), (train_end + dt.timedelta(days=1), val_end),
              (val_end + dt.timedelta(days=1), end)][part]
    return lo + dt.timedelta(days=rng.randrange((hi - lo).days + 1))


def make_campaign(i, rng):
    city, state = CITIES[rng.randrange(len(CITIES))]
    owner = OWNERS[rng.randrange(len(OWNERS))]
    kind = KINDS[rng.randrange(len(KINDS))]
    flags = {k: rng.random() < p for k, p in RATES.items()}
    if flags["new_business"]:
        flags["longer_2y"] = False
    # Long descriptions (> 180 words) for about 65% of campaigns.
    n_filler = rng.randint(14, 20) if rng.random() < 0.65 else rng.randint(2, 7)
    filler = [s.format(kind=kind) for s in rng.sample(FILLER, min(n_filler, len(FILLER)))]
    opening = f"{owner} runs a small {kind} in {city}."
    body = []
    for k in ("longer_2y", "new_business", "employees", "rent", "social_better", "self_worse"):
        if flags[k]:
            body.append(STRATEGY[k].format(k=rng.randint(2, 12), n=rng.randint(3, 25)))
    sentences = filler[:]
    for s in body:
        sentences.insert(rng.randrange(len(sentences) + 1), s)
    tail = [STRATEGY[k] for k in ("match", "extrinsic", "urgency", "gratitude") if flags[k]]
    text = " ".join([opening] + sentences + tail)
    if rng.random() < 0.25:
        text += " " + rng.choice(["#smallbusiness", "#supportlocal", "#shopsmall"])
    logit = INTERCEPT + sum(c for k, c in COEF.items() if flags[k])
    funded = rng.random() < sigmoid(logit)
    created = pick_date(rng)
    donations = []
    if funded:
        for _ in range(rng.randint(1, 8)):
            when = dt.datetime.combine(created, dt.time(12)) + dt.timedelta(hours=rng.randint(1, 900))
            donations.append({"timestamp": when.isoformat(), "amount": float(rng.choice([10, 20, 25, 50, 100, 250]))})
    return {
        "id": "mc-%04d" % i,
        "title": f"Help {owner}'s {kind} through the pandemic",
        "description": text,
        "created_date": created.isoformat(),
        "city": city,
        "state": state,
        "county": None,
        "goal_amount": float(round(math.exp(rng.gauss(8.5, 0.8)) / 50) * 50 + 50),
        "organizer_male": rng.random() < 0.5,
        "has_beneficiary": rng.random() < 0.3,
        "gofundme_organized": rng.random() < 0.05,
        "donations": donations,
        "funded": funded,
    }, flags, sigmoid(logit)


def write_acs(path, rng):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["city", "state"] + [c[0] for c in ACS_COLUMNS])
        for city, state in CITIES:
            if (city, state) in NO_ACS:
                continue
            row = [city, state]
            for name, kind, lo, hi in ACS_COLUMNS:
                v = lo + (hi - lo) * rng.random()
                row.append(("%.1f" % v) if kind != "count" or hi < 100 else str(int(v)))
            w.writerow(row)


def write_covid(path, rng):
    states = sorted({s for _, s in CITIES})
    start = dt.date(2020, 1, 1)
    days = (dt.date(2020, 12, 31) - start).days + 1
    scale = {s: rng.uniform(0.5, 3.0) for s in states}
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["state", "date", "new_cases"])
        for d in range(days):
            day = start + dt.timedelta(days=d)
            wave = 0 if d < 50 else (math.exp(-((d - 100) / 25) ** 2) + 1.6 * math.exp(-((d - 200) / 30) ** 2) + 2.5 * (d / days) ** 3)
            total = 0
            for s in states:
                c = int(round(1000 * scale[s] * wave * rng.uniform(0.8, 1.2)))
                total += c
                w.writerow([s, day.isoformat(), c])
            w.writerow(["US", day.isoformat(), total * 4 + int(round(5000 * wave))])


# Probability that the first-named variant wins each comparison.
CHOICE_SHARES = {
    ("augmented", "original"): 0.83,
    ("augmented", "extended"): 0.82,
    ("extended", "original"): 0.61,
}


def write_choices(path, ids, rng, participants=300, pairs_each=2):
    with open(path, "w") as f:
        for p in range(participants):
            pid = f"p{p + 1:04d}"
            attention = rng.random() >= 0.08
            donated = rng.random() < 0.8
            cov = {"age": rng.randint(18, 75), "female": int(rng.random() < 0.45)}
            for _ in range(pairs_each):
                (winner, loser), share = rng.choice(sorted(CHOICE_SHARES.items()))
                shown = [winner, loser]
                rng.shuffle(shown)
                own = winner if rng.random() < share else loser
                public = winner if rng.random() < share else loser
                rec = {
                    "participant": pid,
                    "campaign": rng.choice(ids),
                    "first": shown[0],
                    "second": shown[1],
                    "own_choice": own,
                    "public_choice": public,
                    "attention_passed": attention,
                    "recall_passed": rng.random() >= 0.05,
                    "donated_past_year": donated,
                    "covariates": cov,
                }
                f.write(json.dumps(rec) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "minicorpus"))
    ap.add_argument("--seed", type=int, default=20200122)
    ap.add_argument("--n", type=int, default=200)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    os.makedirs(args.out, exist_ok=True)
    rows = [make_campaign(i + 1, rng) for i in range(args.n)]
    with open(os.path.join(args.out, "campaigns.jsonl"), "w") as f:
        for rec, _, _ in rows:
            f.write(json.dumps(rec) + "\n")
    write_acs(os.path.join(args.out, "acs.csv"), rng)
    write_covid(os.path.join(args.out, "covid.csv"), rng)
    write_choices(os.path.join(args.out, "choices.jsonl"), [r["id"] for r, _, _ in rows],
                  random.Random(args.seed + 1))
    funded = sum(r["funded"] for r, _, _ in rows)
    bayes = sum((p >= 0.5) == r["funded"] for r, _, p in rows) / len(rows)
    print(f"{len(rows)} campaigns, {funded} funded, Bayes-rule accuracy {bayes:.3f}")


if __name__ == "__main__":
    main()
