// Generated by scripts/gen_tw2_table.py. Do not edit.
#ifndef EIGENSENSE_DETAIL_TW2_TABLE_DATA_HPP
#define EIGENSENSE_DETAIL_TW2_TABLE_DATA_HPP

#include <array>
#include <utility>

namespace eigensense::detail {

inline constexpr const char* kTw2Provenance =
    "F2 via Gauss-Legendre Fredholm determinant of the Airy kernel, 120 nodes, s in [-10.0, 6.0] step 0.05";

inline constexpr std::array<std::pair<double, double>, 321> kTw2Table = {{
    {-10.00, 4.2120654558232571e-37},
    {-9.95, 1.461950142580518e-36},
    {-9.90, 5.0115380083756605e-36},
    {-9.85, 1.6967807547461956e-35},
    {-9.80, 5.6747051673832399e-35},
    {-9.75, 1.8747017805255739e-34},
    {-9.70, 6.1184024046324043e-34},
    {-9.65, 1.9727690260233355e-33},
    {-9.60, 6.2845637063548917e-33},
    {-9.55, 1.9781806847628352e-32},
    {-9.50, 6.1528141964581289e-32},
    {-9.45, 1.8911433876863093e-31},
    {-9.40, 5.7444506902899756e-31},
    {-9.35, 1.7245243954845278e-30},
    {-9.30, 5.1170030072632033e-30},
    {-9.25, 1.5007745860365735e-29},
    {-9.20, 4.3510690295140019e-29},
    {-9.15, 1.2470470503316164e-28},
    {-9.10, 3.5334951801473583e-28},
    {-9.05, 9.8989129540597645e-28},
    {-9.00, 2.7419503225080392e-27},
    {-8.95, 7.5101253004809172e-27},
    {-8.90, 2.0341266733877498e-26},
    {-8.85, 5.4485242748442229e-26},
    {-8.80, 1.4433681484039694e-25},
    {-8.75, 3.7818123356013413e-25},
    {-8.70, 9.8010923104391016e-25},
    {-8.65, 2.5126258618089556e-24},
    {-8.60, 6.3721674341554939e-24},
    {-8.55, 1.5987470323380773e-23},
    {-8.50, 3.9685571608579484e-23},
    {-8.45, 9.747047028499691e-23},
    {-8.40, 2.3687987256237913e-22},
    {-8.35, 5.6967229475772997e-22},
    {-8.30, 1.3557857257190929e-21},
    {-8.25, 3.1933990768186291e-21},
    {-8.20, 7.4445537232178108e-21},
    {-8.15, 1.7178082288522398e-20},
    {-8.10, 3.9236328918724447e-20},
    {-8.05, 8.8717011892769425e-20},
    {-8.00, 1.9859004660427951e-19},
    {-7.95, 4.4011608586687586e-19},
    {-7.90, 9.6574700767298903e-19},
    {-7.85, 2.0983263791104991e-18},
    {-7.80, 4.5146430468873858e-18},
    {-7.75, 9.6192603214649839e-18},
    {-7.70, 2.0298081491268383e-17},
    {-7.65, 4.2421940810716453e-17},
    {-7.60, 8.7816369579593002e-17},
    {-7.55, 1.8006819097038558e-16},
    {-7.50, 3.6576511082514e-16},
    {-7.45, 7.360350253598557e-16},
    {-7.40, 1.4674144510165539e-15},
    {-7.35, 2.8986273492979556e-15},
    {-7.30, 5.6734135412089413e-15},
    {-7.25, 1.1003634017700864e-14},
    {-7.20, 2.1149234566845781e-14},
    {-7.15, 4.0285352834714097e-14},
    {-7.10, 7.6053791921071261e-14},
    {-7.05, 1.4231246366016888e-13},
    {-7.00, 2.6396147697952955e-13},
    {-6.95, 4.8533419814696772e-13},
    {-6.90, 8.8464933444979774e-13},
    {-6.85, 1.5986688709574559e-12},
    {-6.80, 2.8643769550655759e-12},
    {-6.75, 5.0887756039779159e-12},
    {-6.70, 8.9646862755830094e-12},
    {-6.65, 1.5661117455369234e-11},
    {-6.60, 2.71333517086447e-11},
    {-6.55, 4.6623447181860041e-11},
    {-6.50, 7.9460766322742784e-11},
    {-6.45, 1.3433084422586137e-10},
    {-6.40, 2.2526854895832098e-10},
    {-6.35, 3.7476100808512973e-10},
    {-6.30, 6.1853524772894166e-10},
    {-6.25, 1.0128798367134756e-09},
    {-6.20, 1.6457430024450967e-09},
    {-6.15, 2.6534073652217638e-09},
    {-6.10, 4.2453242787229229e-09},
    {-6.05, 6.7407782482096629e-09},
    {-6.00, 1.06225467417205e-08},
    {-5.95, 1.6614753787030517e-08},
    {-5.90, 2.5794851308645104e-08},
    {-5.85, 3.9753303135485381e-08},
    {-5.80, 6.0819339526165997e-08},
    {-5.75, 9.2377389045027321e-08},
    {-5.70, 1.3930682372831459e-07},
    {-5.65, 2.0858786633789556e-07},
    {-5.60, 3.1012934441529267e-07},
    {-5.55, 4.5788991055990225e-07},
    {-5.50, 6.7138387899365086e-07},
    {-5.45, 9.776864501217747e-07},
    {-5.40, 1.4140812688729026e-06},
    {-5.35, 2.0315263746112369e-06},
    {-5.30, 2.8991529077568215e-06},
    {-5.25, 4.1100545077568952e-06},
    {-5.20, 5.7886739725521733e-06},
    {-5.15, 8.1001469139341977e-06},
    {-5.10, 1.1262018874218574e-05},
    {-5.05, 1.5558811199671071e-05},
    {-5.00, 2.1359969847463996e-05},
    {-4.95, 2.9141787546476747e-05},
    {-4.90, 3.9513939974252032e-05},
    {-4.85, 5.3251316805571227e-05},
    {-4.80, 7.1331853944185545e-05},
    {-4.75, 9.4981078721668769e-05},
    {-4.70, 0.0001257240596796501},
    {-4.65, 0.00016544540088185016},
    {-4.60, 0.00021645783173410838},
    {-4.55, 0.00028157981162174459},
    {-4.50, 0.00036422238967889699},
    {-4.45, 0.00046848533025847919},
    {-4.40, 0.00059926223238111287},
    {-4.35, 0.00076235403689860236},
    {-4.30, 0.00096458993106936382},
    {-4.25, 0.0012139542322999325},
    {-4.20, 0.0015197173695977201},
    {-4.15, 0.0018925685946311749},
    {-4.10, 0.0023447475591596607},
    {-4.05, 0.0028901714098499513},
    {-4.00, 0.0035445535955096648},
    {-3.95, 0.0043255101778008898},
    {-3.90, 0.005252649107902521},
    {-3.85, 0.0063476377018362243},
    {-3.80, 0.007634243438767052},
    {-3.75, 0.0091383432398737443},
    {-3.70, 0.01088789657734097},
    {-3.65, 0.012912878126101609},
    {-3.60, 0.015245166212007985},
    {-3.55, 0.017918384029494548},
    {-3.50, 0.020967691492767004},
    {-3.45, 0.024429526632875332},
    {-3.40, 0.028341296636983822},
    {-3.35, 0.032741019916903306},
    {-3.30, 0.037666921956236929},
    {-3.25, 0.043156989078726865},
    {-3.20, 0.049248485660045679},
    {-3.15, 0.055977441624536155},
    {-3.10, 0.063378118279986878},
    {-3.05, 0.071482461601683048},
    {-3.00, 0.080319552939334335},
    {-2.95, 0.089915067750057476},
    {-2.90, 0.10029075332730397},
    {-2.85, 0.11146393657785798},
    {-2.80, 0.12344707268456519},
    {-2.75, 0.13624734497924471},
    {-2.70, 0.14986632554659607},
    {-2.65, 0.16429970500428837},
    {-2.60, 0.17953709858483516},
    {-2.55, 0.19556193411776407},
    {-2.50, 0.21235142581958888},
    {-2.45, 0.22987663599315727},
    {-2.40, 0.24810262486967444},
    {-2.35, 0.2669886869502317},
    {-2.30, 0.28648867037270792},
    {-2.25, 0.3065513740959202},
    {-2.20, 0.32712101610308919},
    {-2.15, 0.34813776442268374},
    {-2.10, 0.36953832158117339},
    {-2.05, 0.39125655216586974},
    {-2.00, 0.41322414250512091},
    {-1.95, 0.43537128107702805},
    {-1.90, 0.4576273481374033},
    {-1.85, 0.47992160320530575},
    {-1.80, 0.502183859444989},
    {-1.75, 0.52434513461476384},
    {-1.70, 0.54633826908859184},
    {-1.65, 0.56809850246355442},
    {-1.60, 0.58956400141087084},
    {-1.55, 0.61067633267329435},
    {-1.50, 0.63138087642072505},
    {-1.45, 0.65162717651223923},
    {-1.40, 0.67136922554234324},
    {-1.35, 0.69056568384010086},
    {-1.30, 0.70918003281384334},
    {-1.25, 0.72718066416707061},
    {-1.20, 0.74454090753316726},
    {-1.15, 0.76123899997233535},
    {-1.10, 0.77725800153321722},
    {-1.05, 0.79258566169776068},
    {-1.00, 0.80721424199928404},
    {-0.95, 0.8211403004322132},
    {-0.90, 0.83436444346322636},
    {-0.85, 0.84689105151579036},
    {-0.80, 0.85872798374405113},
    {-0.75, 0.86988626775043942},
    {-0.70, 0.88037977964788627},
    {-0.65, 0.89022491953698146},
    {-0.60, 0.89944028707559898},
    {-0.55, 0.90804636137828587},
    {-0.50, 0.91606518900928691},
    {-0.45, 0.92352008333993674},
    {-0.40, 0.93043533804061507},
    {-0.35, 0.93683595698060029},
    {-0.30, 0.94274740232571341},
    {-0.25, 0.94819536216175437},
    {-0.20, 0.95320553853823387},
    {-0.15, 0.95780345642690878},
    {-0.10, 0.96201429372722636},
    {-0.05, 0.96586273212820462},
    {0.00, 0.96937282835526195},
    {0.05, 0.97256790509087288},
    {0.10, 0.97547046065946175},
    {0.15, 0.9781020964078494},
    {0.20, 0.98048346059088887},
    {0.25, 0.98263420748512287},
    {0.30, 0.98457297039824909},
    {0.35, 0.98631734721572406},
    {0.40, 0.98788389712467506},
    {0.45, 0.98928814717589242},
    {0.50, 0.99054460738371597},
    {0.55, 0.99166679311792716},
    {0.60, 0.99266725360803698},
    {0.65, 0.9935576054559534},
    {0.70, 0.99434857013508615},
    {0.75, 0.99505001454023712},
    {0.80, 0.995670993740984},
    {0.85, 0.99621979517986459},
    {0.90, 0.9967039836439664},
    {0.95, 0.99713044642316995},
    {1.00, 0.9975054381493893},
    {1.05, 0.99783462488763974},
    {1.10, 0.99812312712132811},
    {1.15, 0.99837556134011762},
    {1.20, 0.99859607999906064},
    {1.25, 0.99878840967211335},
    {1.30, 0.99895588727183726},
    {1.35, 0.99910149425004746},
    {1.40, 0.99922788873170598},
    {1.45, 0.99933743556664589},
    {1.50, 0.99943223431115513},
    {1.55, 0.99951414517437565},
    {1.60, 0.9995848129832039},
    {1.65, 0.9996456892344382},
    {1.70, 0.99969805231449749},
    {1.75, 0.9997430259757033},
    {1.80, 0.99978159616413853},
    {1.85, 0.99981462629781204},
    {1.90, 0.99984287109565606},
    {1.95, 0.99986698905805149},
    {2.00, 0.99988755369830995},
    {2.05, 0.99990506362227427},
    {2.10, 0.99991995154994762},
    {2.15, 0.99993259236917054},
    {2.20, 0.99994331030700301},
    {2.25, 0.99995238529968788},
    {2.30, 0.99996005863712634},
    {2.35, 0.99996653795272072},
    {2.40, 0.99997200162437461},
    {2.45, 0.99997660264737653},
    {2.50, 0.99998047203505536},
    {2.55, 0.99998372179832107},
    {2.60, 0.99998644755071253},
    {2.65, 0.9999887307812908},
    {2.70, 0.99999064083367806},
    {2.75, 0.99999223662577619},
    {2.80, 0.99999356814120022},
    {2.85, 0.9999946777202211},
    {2.90, 0.99999560117503272},
    {2.95, 0.99999636875144426},
    {3.00, 0.99999700595660745},
    {3.05, 0.99999753427014182},
    {3.10, 0.99999797175397698},
    {3.15, 0.99999833357442658},
    {3.20, 0.99999863244831833},
    {3.25, 0.99999887902359708},
    {3.30, 0.99999908220344824},
    {3.35, 0.99999924942187146},
    {3.40, 0.99999938687757528},
    {3.45, 0.99999949973218938},
    {3.50, 0.99999959227794055},
    {3.55, 0.99999966807929153},
    {3.60, 0.99999973009237375},
    {3.65, 0.99999978076555796},
    {3.70, 0.99999982212400074},
    {3.75, 0.99999985584059714},
    {3.80, 0.99999988329546718},
    {3.85, 0.99999990562571794},
    {3.90, 0.99999992376703328},
    {3.95, 0.99999993848837376},
    {4.00, 0.99999995042087886},
    {4.05, 0.9999999600819216},
    {4.10, 0.99999996789508183},
    {4.15, 0.99999997420671949},
    {4.20, 0.99999997929970363},
    {4.25, 0.9999999834047657},
    {4.30, 0.99999998670987866},
    {4.35, 0.9999999893679975},
    {4.40, 0.99999999150343133},
    {4.45, 0.99999999321708666},
    {4.50, 0.99999999459077582},
    {4.55, 0.99999999569075282},
    {4.60, 0.99999999657060623},
    {4.65, 0.99999999727363165},
    {4.70, 0.99999999783476712},
    {4.75, 0.99999999828217268},
    {4.80, 0.99999999863852229},
    {4.85, 0.99999999892204761},
    {4.90, 0.9999999991473939},
    {4.95, 0.99999999932631267},
    {5.00, 0.99999999946822093},
    {5.05, 0.99999999958065733},
    {5.10, 0.99999999966965147},
    {5.15, 0.99999999974001796},
    {5.20, 0.99999999979559873},
    {5.25, 0.99999999983945576},
    {5.30, 0.99999999987402699},
    {5.35, 0.99999999990125055},
    {5.40, 0.99999999992266653},
    {5.45, 0.99999999993949695},
    {5.50, 0.99999999995271072},
    {5.55, 0.99999999996307432},
    {5.60, 0.99999999997119449},
    {5.65, 0.99999999997755051},
    {5.70, 0.99999999998252087},
    {5.75, 0.99999999998640365},
    {5.80, 0.99999999998943423},
    {5.85, 0.99999999999179667},
    {5.90, 0.9999999999936372},
    {5.95, 0.99999999999506961},
    {6.00, 0.99999999999618305}
}};

}  // namespace eigensense::detail

#endif  // EIGENSENSE_DETAIL_TW2_TABLE_DATA_HPP
