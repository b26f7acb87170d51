"""Published reference data for the length-192 and length-200 extended
quadratic-residue codes, frozen for exact comparison."""

# Two-parameter family for the [192, 96] extended QR code, in the
# convention E_28 = 48 z1, E_32 = 6 z2.  Rows: weight -> (const, c1, c2),
# symmetric about 96; only the lower half is listed.
EQR192_FAMILY = {
    0: (1, 0, 0),
    28: (0, 48, 0),
    32: (0, 0, 6),
    36: (69065734464, 11568, -192),
    40: (16681003659936, -387072, 2976),
    44: (2638181865286080, 4662144, -29760),
    48: (260118707412159120, -30019584, 215760),
    52: (16506204128755716672, 102079872, -1208256),
    56: (688919563458768198624, -7108608, 5437152),
    60: (19261567021963529559744, -2055291840, -20195136),
    64: (366292346792783194741815, 13670572032, 63109800),
    68: (4798230291291549388046400, -56511000000, -168292800),
    72: (43753732703694320252103840, 175210813440, 387073440),
    76: (280144274178089715889150656, -434619319680, -774146880),
    80: (1268289709189717721455882224, 890278318080, 1354757040),
    84: (4082464373929527973794806080, -1533608219520, -2084241600),
    88: (9382224038665793129097020640, 2246629754880, 2828613600),
    92: (15439604564036779974450436032, -2818036032480, -3394336320),
    96: (18224832149069836877698945680, 3037942333440, 3606482340),
}

# The likeliest member of that family (z1 = 18145, z2 = 19781679).
EQR192_LIKELY = {
    0: 1,
    28: 870960,
    32: 118690074,
    36: 65477553456,
    40: 16732850515200,
    44: 2637677757121920,
    48: 260122430801868480,
    52: 16506182079662652288,
    56: 688919670885778044672,
    60: 19261566585176561409600,
    64: 366292348289253529616655,
    68: 4798230286937043145435200,
    72: 43753732714530483001478400,
    76: 280144274154889623254545536,
    80: 1268289709232671190425713984,
    84: 4082464373860470854361969280,
    88: 9382224038762512952249552640,
    92: 15439604563918501039140805152,
    96: 18224832149196302617308263340,
}

# Matching [191, 96] QR-code coefficients used by the pair identity checks.
QR191_PARTIAL = {27: 127015, 28: 743945, 31: 19781679, 32: 98908395}

# One-parameter family for the [200, 100] extended QR code (E_32 = 25 z).
EQR200_FAMILY = {
    32: (0, 25),
    36: (21005534550, -450),
    40: (6467522952660, 1225),
    44: (1252975498471200, 48800),
    48: (152872620852751800, -824600),
    52: (12069364505468120400, 7427600),
    56: (630615147670747950200, -46927800),
    60: (22215915779698502141280, 227986400),
    64: (535999851662996527356550, -892437300),
    68: (8973312175360724436541800, 2896038600),
    72: (105388467829350995361897825, -7941316500),
    76: (876310274663366548170765600, 18652452000),
    80: (5197894915757311013178267720, -37900941000),
    84: (22129281942550350836000132400, 67117542000),
    88: (67949637583204730713462120200, -104150049000),
    92: (151037779970268049961942408800, 142175052000),
    96: (243659108313146247784654076100, -171190052250),
    100: (285720732951827690430040227204, 182092000500),
}

# Fixed-subcode weight counts for the length-192 code under the Sylow
# subgroups of its fractional-linear group (order 3483840 = 2^6*3*5*19*191):
# label -> (dimension, count at weight 28, count at weight 32).
EQR192_SUBGROUP_COUNTS = {
    "H2": (48, 144, 5274),
    "G40": (25, 6, 30),
    "G41": (24, 0, 42),
    "S3": (32, 0, 0),
    "S5": (20, 0, 19),
    "S19": (6, 0, 0),
    "S191": (1, 0, 0),
}

# Same for the length-200 code (group order 3940200 = 2^3*3^2*5^2*11*199),
# counts at weight 32 only.
EQR200_SUBGROUP_COUNTS = {
    "H2": (50, 2675),
    "G40": (25, 33),
    "G41": (26, 15),
    "S3": (34, 165),
    "S5": (20, 0),
    "S11": (10, 0),
    "S199": (1, 0),
}

# Congruences those counts combine to.
EQR192_E28_CONGRUENCE = (870960, 3483840)
EQR192_E32_CONGRUENCE = (239514, 3483840)
EQR200_E32_CONGRUENCE = (2790975, 3940200)

# Search-based estimates feeding the lattice-point selection:
# (weight, |S2|, |S3|, dominance numerator/denominator, product).
QR191_M4_ROWS = [
    (27, 127015, 127015, (1, 1), 127015),
    (31, 7000000, 5511811, (357, 100), 19677165),
]
QR199_M4_ESTIMATE = 6755539  # estimated count of weight-31 words
