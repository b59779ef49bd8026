#!/usr/bin/env python3
"""Deferred acceptance, stability checking, and the brute-force oracle.

Both proposing directions are stable for the same profiles; the proposing
side gets its best stable outcome, the other side its worst.  On small
markets the oracle enumerates the whole stable set so these claims can be
checked outright.
"""
from interview_match import (
    DOCTORS,
    HOSPITALS,
    MarketConfig,
    UNMATCHED,
    deferred_acceptance,
    generate_market,
    rank_of_match,
    serial_dictatorship,
    to_preferences,
)
from interview_match import oracle

instance = generate_market(MarketConfig(5, 5, 0.3, 0.3, seed=13))
doctors = to_preferences(instance, DOCTORS)
hospitals = to_preferences(instance, HOSPITALS)

doc_run = deferred_acceptance(doctors, hospitals, DOCTORS)
hosp_run = deferred_acceptance(doctors, hospitals, HOSPITALS)
print("doctor-proposing assignment: ", doc_run.doctor_to_hospital)
print("hospital-proposing assignment:", hosp_run.doctor_to_hospital)

ok, blocks = oracle.is_stable(doc_run, doctors, hospitals)
print(f"\ndoctor-proposing run stable? {ok} (blocking pairs: {blocks})")

stable_set = oracle.enumerate_stable(doctors, hospitals)
print(f"the oracle finds {len(stable_set)} stable matching(s) in total")
for matching in stable_set:
    ranks = [rank_of_match(matching, doctors, d) for d in range(5)]
    print(f"  doctors' ranks {ranks}  assignment {matching.doctor_to_hospital}")
print("doctor-proposing DA is the doctor-best element of that set;")
print("hospital-proposing DA is the doctor-worst element.")

unmatched = [
    sum(h == UNMATCHED for h in m.doctor_to_hospital) for m in stable_set
]
print(f"unmatched doctors across the stable set: {unmatched} (always identical)")

print("\nwhen every doctor submits one shared list, DA reduces to serial")
print("dictatorship with hospitals picking in that list's order:")
aligned = generate_market(MarketConfig(5, 5, 1.0, 0.2, seed=3))
a_doctors = to_preferences(aligned, DOCTORS)
a_hospitals = to_preferences(aligned, HOSPITALS)
da = deferred_acceptance(a_doctors, a_hospitals, DOCTORS)
sd = serial_dictatorship(a_doctors.lists[0], a_hospitals)
print(f"  DA: {da.doctor_to_hospital}")
print(f"  SD: {sd.doctor_to_hospital}  (equal: {da == sd})")
