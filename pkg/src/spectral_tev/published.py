"""Published eigenvalue tables used as regression fixtures.

Each table lists the first four eigenvalues for truncation degrees
N = 10, 15, 20, 25, 30 on the unit ball.  Table 6.7 holds finite element
values of two to three digits, grouped by the mode block they belong to.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["FEM_BLOCKS", "PublishedTable", "TABLES", "get_table"]


@dataclass(frozen=True)
class PublishedTable:
    table_id: str
    mode: str
    l: int
    n: tuple[float, ...]
    R: float
    rows: dict

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.rows))


def _table(table_id, mode, l, n, rows):
    return PublishedTable(table_id=table_id, mode=mode, l=l, n=tuple(n), R=1.0, rows=rows)


TABLES = {
    t.table_id: t
    for t in (
        _table("6.1", "TE", 1, [16.0], {
            10: (1.460855902327352, 2.309268980991891, 3.142098536003481, 4.004131427018431),
            15: (1.460842273223355, 2.309270674683650, 3.141592652865679, 4.028313168694923),
            20: (1.460855902076009, 2.309270674683547, 3.141592653589792, 4.028312376370235),
            25: (1.460855902076010, 2.309270674683545, 3.141592653589794, 4.028312376370704),
            30: (1.460855902076010, 2.309270674683548, 3.141592653589792, 4.028312376370695),
        }),
        _table("6.2", "TE", 2, [16.0], {
            10: (1.764042417090797, 2.631690641913292, 3.465152456664587, 4.304027448259460),
            15: (1.764042422029338, 2.631678257808169, 3.465236228216971, 4.293583051636833),
            20: (1.764042422029338, 2.631678257809425, 3.465236224179554, 4.293582919867683),
            25: (1.764042422029339, 2.631678257809425, 3.465236224179551, 4.293582919866948),
            30: (1.764042422029338, 2.631678257809422, 3.465236224179552, 4.293582919866945),
        }),
        _table("6.3", "TE", 3, [16.0], {
            10: (2.061050417316723, 2.949614759058087, 3.789381768848592, 4.729312472707909),
            15: (2.061050433015994, 2.949488215613814, 3.792296568087934, 4.619875856328957),
            20: (2.061050433015994, 2.949488215659479, 3.792296458205384, 4.619887058309071),
            25: (2.061050433015994, 2.949488215659483, 3.792296458205412, 4.619887058253892),
            30: (2.061050433015993, 2.949488215659481, 3.792296458205412, 4.619887058253892),
        }),
        _table("6.4", "TM", 1, [16.0], {
            10: (1.165407223825574, 2.045867252670490, 3.158017632244895, 3.442289242670909),
            15: (1.165407223827102, 2.045867782103358, 3.418097647742193, 4.292461561664239),
            20: (1.165407223827106, 2.045867782103363, 3.418097651533288, 4.292488875027842),
            25: (1.165407223827098, 2.045867782103357, 3.418097651533263, 4.292488875029357),
            30: (1.165407223827108, 2.045867782103361, 3.418097651533326, 4.292488875029386),
        }),
        _table("6.5", "TM", 2, [16.0], {
            10: (1.475116524235235, 2.340653677153939, 3.231276889331592, 3.354682219133095),
            15: (1.475116524493845, 2.340657592735246, 3.233313705482311, 4.557043549625480),
            20: (1.475116524493846, 2.340657592735365, 3.233313708702767, 4.557097304644416),
            25: (1.475116524493844, 2.340657592735367, 3.233313708702756, 4.557097304725269),
            30: (1.475116524493843, 2.340657592735366, 3.233313708702761, 4.557097304725263),
        }),
        _table("6.6", "TM", 3, [16.0], {
            10: (1.777410985980160, 2.656258796160595, 3.455344578108596, 3.582237584322505),
            15: (1.777410996101287, 2.656264636190942, 3.512014047361030, 4.421816274456907),
            20: (1.777410996101286, 2.656264636197187, 3.512014051598614, 4.421843661628902),
            25: (1.777410996101286, 2.656264636197187, 3.512014051598621, 4.421843661635361),
            30: (1.777410996101284, 2.656264636197187, 3.512014051598614, 4.421843661635358),
        }),
        _table("6.8", "TE", 1, [8.0, 0.0, 4.0], {
            10: (1.924760241224309, 3.066320509754762, 4.953581565194202, 6.219217568046522),
            15: (1.924760240239596, 3.066318451356159, 4.944962746965171, 6.162042706007884),
            20: (1.924760240239595, 3.066318451356097, 4.944962719618220, 6.162013704025296),
            25: (1.924760240239596, 3.066318451356097, 4.944962719618172, 6.162013703949516),
            30: (1.924760240239597, 3.066318451356096, 4.944962719618174, 6.162013703949522),
        }),
        _table("6.9", "TM", 1, [8.0, 0.0, 4.0], {
            10: (1.546722576754737, 3.418052693123285, 4.366864963075772, 4.640915773722154),
            15: (1.546722576768443, 3.418109299464758, 4.616102608978945, 6.423176009030875),
            20: (1.546722576768448, 3.418109299467635, 4.616102624493460, 6.425723290604534),
            25: (1.546722576768440, 3.418109299467642, 4.616102624493454, 6.425723292013815),
            30: (1.546722576768443, 3.418109299467622, 4.616102624493481, 6.425723292013920),
        }),
    )
}

# Table 6.7 split into blocks of 2l+1 repeated values: (mode, l, values).
# The block order follows the table the text compares each block with.
FEM_BLOCKS = (
    ("TM", 1, (1.1741, 1.1717, 1.1721)),
    ("TE", 1, (1.4665, 1.4667, 1.4671)),
    ("TM", 2, (1.4824, 1.4828, 1.4828, 1.4830, 1.4836)),
    ("TE", 2, (1.7690, 1.7690, 1.7698, 1.7700, 1.7705)),
    ("TM", 3, (1.7857, 1.7859, 1.7862, 1.7865, 1.7867, 1.7868, 1.7872)),
)


def get_table(table_id: str) -> PublishedTable:
    try:
        return TABLES[table_id]
    except KeyError:
        known = ", ".join(sorted(TABLES))
        raise KeyError(f"unknown table {table_id!r}; known tables: {known}") from None
