"""Lower/upper probabilities of a die known to be within delta of fair."""
import argparse
from itertools import combinations

from epiprob import CredalSet, Interval, OutcomeSpace, lower_upper

ap = argparse.ArgumentParser()
ap.add_argument("--delta", type=float, default=0.05)
delta = ap.parse_args().delta

faces = ("one", "two", "three", "four", "five", "six")
space = OutcomeSpace(faces)
face = Interval(max(0, 1 / 6 - delta), min(1, 1 / 6 + delta))
die = CredalSet.from_event_bounds(space, [({f}, face) for f in faces[:-1]]
                                  + [({"one", "two"}, Interval.point(1 / 3))])

for k in (1, 2, 3):
    for event in combinations(faces[:3], k):
        print(f"{' or '.join(event):22s} {lower_upper(die, set(event))}")
