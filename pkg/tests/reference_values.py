"""Frozen reference digits and fixtures used by the test suite.

Class products prod_{p in A} (1 - p^-2)^-1 to 100 decimals (truncated), keyed
by modulus; each entry is (sorted residues, decimal string).
"""

CLASS_TABLE_S2 = {
    3: [
        ((1,), "1.0340148754143418805390306444130476285789654284890998864168250384212222458710963580496217079826205962"),
        ((2,), "1.4140643908921476375655018190798293799076950693931621750399249624239281069920884994537548585024751141"),
    ],
    4: [
        ((1,), "1.0561821217268161417379307653162198905875804254607080120043061983027928160622269304895129583729159718"),
        ((3,), "1.1680755854105142886696967370640404013646790214555479928405636811138106593777109466904074727958848702"),
    ],
    5: [
        ((1,), "1.0109151606010195226049565842895149209845386275817385237320242008925161374245672637093961976945589218"),
        ((2, 3), "1.5543760727208892208175902825655517756056301473425740072500779445739239008713864144091807338787870683"),
        ((4,), "1.0049603239222975589937496248102521847955102941880228801995283785215071277007007698854324913611800619"),
    ],
    7: [
        ((1,), "1.0022295338197404262718641591382201924486375654012887922829737967821741903080804142707365752829576151"),
        ((2, 4), "1.3498462543652732078774772449786227776508690212486012031699993571921654938247577702051363005345976601"),
        ((3, 5), "1.1827426007673640920800286839331591851718053604633582633063446685490324905372179981486900018636591391"),
        ((6,), "1.0070520326030740480567193524288887069289367147368758335658931163474829609471206941243262659955353536"),
    ],
    8: [
        ((1,), "1.0048350650341911871183598311691041195979073175434088789551560671174639620513105635207321058806858783"),
        ((3,), "1.1394187771082115150270589307733402088725599610962948302258212741102101655776074291446593749151233349"),
        ((5,), "1.0510999849421833079368775560063350568012010184581785080599129420739729304855878338889504795925534495"),
        ((7,), "1.0251503739257591799161954355609415879433110027602441530695669498217644979604100790076269431423643529"),
    ],
    9: [
        ((1,), "1.0040338350512887979824781199247474894825228957987728822867014235963409379779383933608943169486037141"),
        ((2, 5), "1.4078370719965380509352684034337982318382561598087818858210399330874959084862168768292757779098434896"),
        ((4, 7), "1.0298605876778261849188642351352166316312016668729315881630945612355333656288996928513965156000536245"),
        ((8,), "1.0044233235645501597866082583905820539661196723078817744796262301718753964107666334579951341650166760"),
    ],
    11: [
        ((1,), "1.0023282408977365273378057924694258204345780641487923124998954415038255729260751698484874600311008712"),
        ((2, 6, 7, 8), "1.3824011448057887177339824359547044191351164358415713863061017025001900591813432125138727410674864687"),
        ((3, 4, 5, 9), "1.1764019224415147177656838816995478503151422104571572819381334430481040930087434167383619502197926318"),
        ((10,), "1.0007937707147400068022327799813807530993799728155686828019665982489326659245617120791117422821298769"),
    ],
    12: [
        ((1,), "1.0076132452141449661693493122477322937895471429043317666433684481949208978610185578530605791112980649"),
        ((5,), "1.0482019036007699368349374348957926734804136744948152581073761449524161715714378823594049908856694968"),
        ((7,), "1.0262021468312337007072018669663615723611093213133495148104006649654603293938645419299917826386791609"),
        ((11,), "1.0117786368503325837051194102673312780584012308952087028359594075615016417045630054442195913298062727"),
    ],
    13: [
        ((1,), "1.0006568661982896660574722847307719791777007170739933554448371298836602525368434379642735908807731673"),
        ((2, 6, 7, 11), "1.3800521671191429362373358958335931288490639227621600813278019617083570070370066602382199970705585939"),
        ((3, 9), "1.1270612738770303759605291904597000803562536681208148604513801329089754699871266424897647225230329593"),
        ((4, 10), "1.0062851383852643565479220786308887403212245535060759162409597732101204893815373574182128055911251752"),
        ((5, 8), "1.0438479529581634832564453121356286713038051094963056435717384646577456296907126329350037661798829979"),
        ((12,), "1.0001947228433530972012251298527083919867659519300049665625930269092410349748206706364882623407453639"),
    ],
    15: [
        ((1,), "1.0014897422734929369562022821522980406202718222418385046920610646033370474611617034094667091315803303"),
        ((2, 8), "1.3424604551549953079930100633457266524298787237238096524039287305862457836700748009151103340693331380"),
        ((4,), "1.0031784700079765853976886540093574955893691696758837351269804562246578843689608028447946691905569351"),
        ((7, 13), "1.0292054524889703048746169681993462053972857342080187576813447386339397516833056076995207140959099521"),
        ((11,), "1.0094113977704153407411140079677171531828385028348741065684391092698429510084796906005158850233855701"),
        ((14,), "1.0017762082895447362610915430799628315610570619846719519146913987002036756822637690944758246983196091"),
    ],
    16: [
        ((1,), "1.0037812963111743771494711722806181645658267852844157268635214891154134995028719419254711001064546873"),
        ((3, 11), "1.1394187771082115150270589307733402088725599610962948302258212741102101655776074291446593749151233349"),
        ((5, 13), "1.0510999849421833079368775560063350568012010184581785080599129420739729304855878338889504795925534495"),
        ((7,), "1.0232548781974070806795776686140697700372891575460019844979298335591253999095571470317405678593405044"),
        ((9,), "1.0010497991214713163783963952101007068052001815703598663813044758989310552178634051978443836362158656"),
        ((15,), "1.0018524179739961315993578022195167826622685174144499996307540930319958161272198597936048207713634947"),
    ],
}


def _digits(text: str) -> str:
    return text.replace(" ", "")


CONSTANT_DIGITS = {
    "alpha0_3": _digits(
        "0.63890 94054 45343 88225 49426 74928 24509 37549 75508 02912"
        " 33454 21692 36570 80763 10027 64965 82468 97179 11252 86643"
    ),
    "beta0": _digits(
        "0.30231 61423 57065 63794 77699 00480 19971 56024 12795 18936"
        " 96454 58867 84128 88654 48752 41051 08994 87467 81397 92727"
    ),
    "shanks_product": _digits(
        "0.95694 53478 51601 18343 69670 57273 89182 87531 74977 29139"
        " 14789 05432 60424 60170 16444 88885 94814 40512 03907 95084"
    ),
    "shanks_I": _digits(
        "0.66974 09699 37071 22053 89224 31571 76440 66883 70157 43648"
        " 24185 73298 52284 52467 99956 45714 72731 50621 02143 59373"
    ),
    "lal_product": _digits(
        "0.88307 10047 43946 67141 78342 99003 10853 46768 88834 88097"
        " 34707 19295 15939 52119 46990 65659 68857 99383 28603 79164"
    ),
    "lal_lambda": _digits(
        "0.79220 82381 67541 66877 54555 66579 02410 11289 32250 98622"
        " 11172 27973 45256 95141 54944 12490 66029 53883 98027 52927"
    ),
    "gs_A": _digits(
        "1.95049 11124 46287 07444 65855 65809 55369 25267 08497 71894"
        " 30550 80726 33188 94627 61381 60369 39924 26646 98594 38665"
    ),
}

# Modulus 7 fixtures: subgroup / class lists and the printed recursion matrices.
MOD7_SUBGROUPS = [(1,), (1, 6), (1, 2, 4), (1, 2, 3, 4, 5, 6)]
MOD7_CLASSES = [(1,), (6,), (2, 4), (3, 5)]
MOD7_ANNIHILATORS = [(0, 1, 2, 3, 4, 5), (0, 2, 4), (0, 3), (0,)]
MOD7_M1 = [[6, 0, 0, 0], [3, 3, 0, 0], [2, 0, 2, 0], [1, 1, 1, 1]]
MOD7_M = {
    2: [[0, 3, 0, 0], [0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 0, 0]],
    3: [[0, 0, 2, 0], [0, 0, 1, 1], [0, 0, 0, 0], [0, 0, 0, 0]],
    6: [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
}
MOD7_N_PRINTED = {
    2: [[0, 1, 0, 0], [0, -1, 0, 0], [0, -1, 0, 1], [0, 1, 0, -1]],
    3: [[0, 0, 1, 0], [0, 0, -1, 1], [0, 0, -1, 0], [0, 0, 1, -1]],
    6: [[0, 0, 1, -1], [0, 0, 0, -1], [0, 0, 0, -1], [0, 0, 0, 1]],
}
# d * M1^-1 * M_d from the printed M1 and M_d (hand-checked; differs from MOD7_N_PRINTED)
MOD7_N_FROM_M = {
    2: [[0, 1, 0, 0], [0, -1, 0, 0], [0, 0, 0, 1], [0, 0, 0, -1]],
    3: [[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, -1, 0], [0, 0, 0, -1]],
    6: [[0, 0, 0, 1], [0, 0, 0, -1], [0, 0, 0, -1], [0, 0, 0, 1]],
}
MOD7_M1_INVERSE = [
    ["1/6", "0", "0", "0"],
    ["-1/6", "1/3", "0", "0"],
    ["-1/6", "0", "1/2", "0"],
    ["1/6", "-1/3", "-1/2", "1"],
]

# timing-table columns: q -> (|G#|), and tuple counts at r = 5 and r = 8
CYCLIC_SUBGROUP_COUNTS = {7: 4, 13: 6, 16: 6, 23: 4, 47: 4, 91: 30, 97: 12}
TUPLE_COUNTS = {5: {3: 5, 5: 19, 7: 28, 13: 55}, 8: {3: 8, 5: 87, 7: 249, 13: 716}}
