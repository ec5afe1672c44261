"""
gaugekit
Gauge integrals on BV sets and dyadic figures: geometry reports, partitions,
Gauss–Green checks, Henstock–Kurzweil integration and integral-claim falsifiers.
"""

import sys
import os

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from terminal_core import GaugeTerminal

def main():
    terminal = GaugeTerminal()
    sys.exit(terminal.run(sys.argv[1:]))

if __name__ == '__main__':
    main()
