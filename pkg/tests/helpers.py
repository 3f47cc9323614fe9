"""Helpers shared by the test modules."""

import csv
from typing import List


def csv_blocks(text: str) -> List[List[List[str]]]:
    """Split CSV output into blocks separated by '#' comment lines."""
    blocks: List[List[List[str]]] = []
    current: List[str] = []
    for line in text.splitlines():
        if line.startswith("#"):
            if current:
                blocks.append(list(csv.reader(current)))
                current = []
            continue
        current.append(line)
    if current:
        blocks.append(list(csv.reader(current)))
    return blocks
