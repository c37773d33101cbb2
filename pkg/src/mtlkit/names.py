import re


class Fresh:
    """Per-run supply of variable names that avoid a given set.

    Names are never handed out twice by the same instance, so a single
    translation run never reuses a variable.
    """

    def __init__(self, avoid=()):
        self.used = set(avoid)
        self.counter = 0

    def reserve(self, names):
        self.used.update(names)

    def __call__(self, base):
        base = re.sub(r"_\d+$", "", base)
        while True:
            self.counter += 1
            name = f"{base}_{self.counter}"
            if name not in self.used:
                self.used.add(name)
                return name
