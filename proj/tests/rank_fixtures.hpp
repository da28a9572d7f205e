#pragma once

// Regression fixtures: metric columns and the dense ranks they must produce.
// Quality columns rank four methods (order: fedavg, fedprox, hetero, split);
// cost columns rank lower-better; robustness columns rank |delta| lower-better.

#include <optional>
#include <string>
#include <vector>

namespace fixtures {

struct RankColumn {
    std::string id;
    bool higher_better;
    std::vector<double> values;
    std::vector<int> expected;
};

struct PartialRankColumn {
    std::string id;
    bool higher_better;
    std::vector<std::optional<double>> values;
    std::vector<std::optional<int>> expected;
};

struct DeltaRankColumn {
    std::string id;
    std::vector<double> deltas;
    std::vector<int> expected;
};

inline std::vector<RankColumn> quality_rank_columns() {
    return {
        // model m0
        {"m0/boolq/loss", false, {0.5051, 0.4939, 0.5059, 0.5161}, {2, 1, 3, 4}},
        {"m0/boolq/acc", true, {77.68, 78.20, 76.73, 76.79}, {2, 1, 4, 3}},
        {"m0/qnli/loss", false, {0.7994, 0.7357, 0.9490, 0.8051}, {2, 1, 4, 3}},
        {"m0/qnli/acc", true, {64.84, 64.96, 64.29, 65.20}, {3, 2, 4, 1}},
        {"m0/piqa/loss", false, {0.6781, 0.6779, 0.6943, 0.6927}, {2, 1, 4, 3}},
        {"m0/piqa/acc", true, {65.29, 65.29, 65.34, 64.47}, {2, 2, 1, 3}},
        {"m0/hellaswag/loss", false, {1.7446, 1.7446, 1.7618, 1.7563}, {1, 1, 3, 2}},
        {"m0/hellaswag/acc", true, {33.84, 33.84, 33.18, 33.67}, {1, 1, 3, 2}},
        {"m0/socialiqa/loss", false, {0.7993, 0.7863, 0.8250, 0.8044}, {2, 1, 4, 3}},
        {"m0/socialiqa/acc", true, {66.63, 67.35, 66.07, 66.38}, {2, 1, 4, 3}},
        {"m0/arce/loss", false, {0.6054, 0.6013, 0.6274, 0.6102}, {2, 1, 4, 3}},
        {"m0/arce/acc", true, {78.60, 78.77, 76.67, 77.02}, {2, 1, 4, 3}},
        {"m0/winogrande/loss", false, {0.6905, 0.6906, 0.6960, 0.6889}, {2, 3, 4, 1}},
        {"m0/winogrande/acc", true, {63.46, 63.61, 61.17, 62.43}, {2, 1, 4, 3}},
        // model m1
        {"m1/boolq/loss", false, {0.7356, 0.7271, 0.7441, 0.7017}, {3, 2, 4, 1}},
        {"m1/boolq/acc", true, {62.94, 64.53, 62.20, 62.72}, {2, 1, 4, 3}},
        {"m1/qnli/loss", false, {0.6720, 0.6741, 0.7411, 0.5718}, {2, 3, 4, 1}},
        {"m1/qnli/acc", true, {68.26, 66.98, 63.87, 71.46}, {2, 3, 4, 1}},
        {"m1/piqa/loss", false, {1.3194, 1.3194, 1.3443, 1.3188}, {2, 2, 3, 1}},
        {"m1/piqa/acc", true, {50.47, 51.47, 51.47, 51.47}, {2, 1, 1, 1}},
        {"m1/hellaswag/loss", false, {2.6755, 2.6755, 2.7378, 2.6765}, {1, 1, 3, 2}},
        {"m1/hellaswag/acc", true, {24.84, 24.84, 24.93, 24.88}, {3, 3, 1, 2}},
        {"m1/socialiqa/loss", false, {1.3476, 1.3368, 1.4414, 1.2748}, {3, 2, 4, 1}},
        {"m1/socialiqa/acc", true, {40.94, 40.38, 38.79, 40.84}, {1, 3, 4, 2}},
        {"m1/arce/loss", false, {2.4061, 2.4061, 2.5769, 2.4278}, {1, 1, 3, 2}},
        {"m1/arce/acc", true, {30.18, 30.18, 30.00, 29.30}, {1, 1, 2, 3}},
        {"m1/winogrande/loss", false, {1.4291, 1.3735, 1.4621, 1.4263}, {3, 1, 4, 2}},
        {"m1/winogrande/acc", true, {50.51, 51.30, 50.51, 50.43}, {2, 1, 2, 3}},
    };
}

// model m2: only the split method is executable; the rest carry no rank.
inline std::vector<PartialRankColumn> partial_quality_rank_columns() {
    using N = std::optional<double>;
    using R = std::optional<int>;
    const N none;
    const R norank;
    return {
        {"m2/boolq/loss", false, {none, none, none, 0.7590}, {norank, norank, norank, 1}},
        {"m2/boolq/acc", true, {none, none, none, 64.25}, {norank, norank, norank, 1}},
        {"m2/qnli/loss", false, {none, none, none, 0.7367}, {norank, norank, norank, 1}},
        {"m2/qnli/acc", true, {none, none, none, 64.52}, {norank, norank, norank, 1}},
        {"m2/piqa/loss", false, {none, none, none, 0.9847}, {norank, norank, norank, 1}},
        {"m2/piqa/acc", true, {none, none, none, 53.81}, {norank, norank, norank, 1}},
        {"m2/hellaswag/loss", false, {none, none, none, 2.6109}, {norank, norank, norank, 1}},
        {"m2/hellaswag/acc", true, {none, none, none, 25.33}, {norank, norank, norank, 1}},
        {"m2/socialiqa/loss", false, {none, none, none, 1.2247}, {norank, norank, norank, 1}},
        {"m2/socialiqa/acc", true, {none, none, none, 45.70}, {norank, norank, norank, 1}},
        {"m2/arce/loss", false, {none, none, none, 2.2811}, {norank, norank, norank, 1}},
        {"m2/arce/acc", true, {none, none, none, 28.07}, {norank, norank, norank, 1}},
        {"m2/winogrande/loss", false, {none, none, none, 0.8169}, {norank, norank, norank, 1}},
        {"m2/winogrande/acc", true, {none, none, none, 51.62}, {norank, norank, norank, 1}},
    };
}

inline std::vector<RankColumn> cost_rank_columns() {
    std::vector<RankColumn> cols;
    auto block = [&cols](const std::string& tag, std::vector<double> wall,
                         std::vector<int> wall_r, std::vector<double> comm,
                         std::vector<int> comm_r, std::vector<double> energy,
                         std::vector<int> energy_r, std::vector<double> mem,
                         std::vector<int> mem_r) {
        cols.push_back({tag + "/wall", false, std::move(wall), std::move(wall_r)});
        cols.push_back({tag + "/comm", false, std::move(comm), std::move(comm_r)});
        cols.push_back({tag + "/energy", false, std::move(energy), std::move(energy_r)});
        cols.push_back({tag + "/mem", false, std::move(mem), std::move(mem_r)});
    };
    // model m0
    block("m0/boolq@71", {6.65, 6.67, 3.07, 0.43}, {3, 4, 2, 1},
          {6624.38, 6624.38, 9326.95, 11744.04}, {1, 1, 2, 3},
          {300.67, 301.19, 138.66, 19.42}, {3, 4, 2, 1},
          {3453.60, 3470.35, 2499.21, 1142.87}, {3, 4, 2, 1});
    block("m0/boolq@75", {12.48, 12.50, 5.32, 0.47}, {3, 4, 2, 1},
          {12420.70, 12420.70, 16166.72, 12811.68}, {1, 1, 3, 2},
          {563.76, 564.83, 240.57, 21.18}, {3, 4, 2, 1},
          {3497.81, 3514.77, 2531.20, 1157.50}, {3, 4, 2, 1});
    block("m0/boolq@78", {32.46, 32.50, 13.33, 0.99}, {3, 4, 2, 1},
          {32293.83, 32293.83, 40416.80, 27224.82}, {2, 2, 3, 1},
          {1466.74, 1468.52, 602.20, 44.94}, {3, 4, 2, 1},
          {3520.44, 3537.51, 2547.57, 1164.99}, {3, 4, 2, 1});
    block("m0/socialiqa@62", {15.79, 15.71, 5.32, 0.44}, {4, 3, 2, 1},
          {15732.89, 15732.89, 16166.72, 10142.58}, {2, 2, 3, 1},
          {772.17, 768.41, 259.95, 21.54}, {4, 3, 2, 1},
          {3418.89, 3462.20, 2562.68, 1147.95}, {3, 4, 2, 1});
    block("m0/socialiqa@64", {34.91, 34.72, 9.98, 0.81}, {4, 3, 2, 1},
          {34777.97, 34777.97, 30468.05, 18683.70}, {3, 3, 2, 1},
          {1707.33, 1697.93, 488.07, 39.61}, {4, 3, 2, 1},
          {3455.95, 3499.73, 2590.46, 1160.39}, {3, 4, 2, 1});
    block("m0/socialiqa@66", {94.94, 94.25, 29.94, 1.34}, {4, 3, 2, 1},
          {94397.34, 94397.34, 91404.14, 30961.56}, {3, 3, 2, 1},
          {4643.29, 4609.67, 1464.33, 65.53}, {4, 3, 2, 1},
          {3476.19, 3520.23, 2605.63, 1167.19}, {3, 4, 2, 1});
    block("m0/arce@75", {24.29, 24.13, 4.00, 0.48}, {4, 3, 2, 1},
          {24013.36, 24013.36, 24250.08, 10676.40}, {2, 2, 3, 1},
          {1176.40, 1168.56, 193.52, 23.09}, {4, 3, 2, 1},
          {3404.12, 3441.75, 2540.26, 1141.11}, {3, 4, 2, 1});
    block("m0/arce@76", {32.64, 33.31, 7.89, 0.95}, {3, 4, 2, 1},
          {32293.83, 33121.88, 47878.36, 21352.80}, {2, 3, 4, 1},
          {1580.47, 1612.96, 382.26, 46.20}, {3, 4, 2, 1},
          {3445.54, 3483.62, 2571.17, 1154.99}, {3, 4, 2, 1});
    block("m0/arce@77", {66.91, 66.58, 11.17, 1.53}, {4, 3, 2, 1},
          {66243.75, 66243.75, 67775.86, 34164.48}, {2, 2, 3, 1},
          {3240.10, 3223.88, 540.93, 73.86}, {4, 3, 2, 1},
          {3458.55, 3496.77, 2580.88, 1159.35}, {3, 4, 2, 1});
    block("m0/piqa@63", {5.02, 5.01, 2.05, 0.18}, {4, 3, 2, 1},
          {4968.28, 4968.28, 6217.97, 4804.38}, {2, 2, 3, 1},
          {232.97, 232.21, 95.18, 8.47}, {4, 3, 2, 1},
          {3432.59, 3398.65, 2531.45, 1137.96}, {4, 3, 2, 1});
    block("m0/piqa@64", {7.52, 8.33, 5.94, 0.30}, {3, 4, 2, 1},
          {7452.42, 8280.47, 18032.11, 8007.30}, {1, 3, 4, 2},
          {349.03, 386.66, 275.42, 14.12}, {3, 4, 2, 1},
          {3473.55, 3439.22, 2561.67, 1151.54}, {4, 3, 2, 1});
    block("m0/piqa@65", {11.68, 17.58, 12.70, 0.79}, {2, 4, 3, 1},
          {11592.66, 17388.98, 38551.41, 20818.98}, {1, 2, 4, 3},
          {541.71, 815.72, 589.29, 36.72}, {2, 4, 3, 1},
          {3492.19, 3457.67, 2575.41, 1157.72}, {4, 3, 2, 1});
    block("m0/hellaswag@30", {15.84, 15.87, 7.38, 0.45}, {3, 4, 2, 1},
          {15732.89, 15732.89, 22384.69, 10142.58}, {2, 2, 3, 1},
          {770.04, 771.13, 358.58, 21.70}, {3, 4, 2, 1},
          {3368.58, 3539.18, 2587.70, 1150.11}, {3, 4, 2, 1});
    block("m0/hellaswag@32", {30.03, 30.02, 12.31, 0.85}, {4, 3, 2, 1},
          {29809.69, 29809.69, 37307.81, 19217.52}, {2, 2, 3, 1},
          {1459.38, 1458.96, 598.08, 41.15}, {4, 3, 2, 1},
          {3408.78, 3581.42, 2618.58, 1163.83}, {3, 4, 2, 1});
    block("m0/hellaswag@33", {73.99, 74.10, 25.23, 2.11}, {3, 4, 2, 1},
          {73696.17, 73696.17, 76481.02, 48043.80}, {2, 2, 3, 1},
          {3596.01, 3601.39, 1226.35, 102.63}, {3, 4, 2, 1},
          {3427.08, 3600.64, 2632.64, 1170.08}, {3, 4, 2, 1});
    block("m0/qnli@62", {2.50, 2.49, 1.03, 0.07}, {4, 3, 2, 1},
          {2484.14, 2484.14, 3108.98, 1601.46}, {2, 2, 3, 1},
          {116.24, 115.91, 48.17, 3.43}, {4, 3, 2, 1},
          {3375.58, 3497.83, 2510.74, 1152.89}, {3, 4, 2, 1});
    block("m0/qnli@63", {18.28, 18.22, 3.71, 1.97}, {4, 3, 2, 1},
          {18217.03, 18217.03, 11192.34, 42705.60}, {2, 2, 1, 3},
          {851.18, 848.50, 172.76, 91.54}, {4, 3, 2, 1},
          {3415.86, 3539.57, 2540.71, 1166.65}, {3, 4, 2, 1});
    block("m0/qnli@64", {53.12, 73.59, 16.29, 3.78}, {3, 4, 2, 1},
          {52995.00, 73696.17, 49121.95, 82208.27}, {2, 3, 1, 4},
          {2474.11, 3427.23, 758.47, 176.19}, {3, 4, 2, 1},
          {3434.19, 3558.57, 2554.34, 1172.91}, {3, 4, 2, 1});
    block("m0/winogrande@57", {10.80, 10.83, 2.46, 0.18}, {3, 4, 2, 1},
          {10764.61, 10764.61, 7461.56, 5338.20}, {3, 3, 2, 1},
          {546.09, 547.75, 124.64, 9.32}, {3, 4, 2, 1},
          {3373.35, 3437.81, 2520.73, 1133.06}, {3, 4, 2, 1});
    block("m0/winogrande@60", {39.91, 46.43, 9.46, 0.74}, {3, 4, 2, 1},
          {39746.25, 46370.62, 28602.66, 21352.80}, {3, 4, 2, 1},
          {2018.83, 2348.84, 478.32, 37.30}, {3, 4, 2, 1},
          {3413.61, 3478.84, 2550.81, 1146.59}, {3, 4, 2, 1});
    block("m0/winogrande@62", {99.43, 99.39, 34.68, 1.38}, {4, 3, 2, 1},
          {99365.62, 99365.62, 105083.67, 40036.50}, {2, 2, 3, 1},
          {5029.80, 5027.48, 1754.18, 69.84}, {4, 3, 2, 1},
          {3431.93, 3497.51, 2564.50, 1152.74}, {3, 4, 2, 1});
    // model m1
    block("m1/boolq@62", {21.88, 35.02, 14.03, 0.62}, {3, 4, 2, 1},
          {10166.13, 41229.32, 50899.22, 14977.36}, {1, 3, 4, 2},
          {1137.31, 1819.79, 729.35, 31.98}, {3, 4, 2, 1},
          {1339.46, 2324.80, 1403.02, 1002.91}, {2, 4, 3, 1});
    block("m1/boolq@63", {89.88, 50.36, 16.37, 0.71}, {4, 3, 2, 1},
          {41794.10, 59302.44, 59382.42, 17223.96}, {2, 3, 4, 1},
          {4671.20, 2617.11, 850.83, 36.75}, {4, 3, 2, 1},
          {1356.61, 2354.56, 1420.98, 1015.75}, {2, 4, 3, 1});
    block("m1/qnli@61", {15.75, 14.31, 4.09, 1.15}, {4, 3, 2, 1},
          {18637.91, 16943.55, 14845.61, 22507.10}, {3, 2, 1, 4},
          {822.83, 747.48, 213.65, 60.05}, {4, 3, 2, 1},
          {2365.36, 2382.52, 1450.77, 1018.20}, {3, 4, 2, 1});
    block("m1/arce@28", {29.95, 30.15, 21.09, 1.78}, {3, 4, 2, 1},
          {35581.46, 35581.46, 37326.09, 24795.95}, {2, 2, 3, 1},
          {1331.65, 1340.68, 938.00, 79.11}, {3, 4, 2, 1},
          {2238.33, 2274.42, 1363.60, 957.83}, {3, 4, 2, 1});
    block("m1/socialiqa@38", {47.18, 44.22, 11.17, 1.46}, {4, 3, 2, 1},
          {55348.95, 51960.23, 40719.38, 20599.72}, {4, 3, 2, 1},
          {2091.23, 1959.83, 494.95, 64.80}, {4, 3, 2, 1},
          {2317.00, 2308.28, 1336.75, 964.00}, {4, 3, 2, 1});
    return cols;
}

inline std::vector<DeltaRankColumn> robustness_rank_columns() {
    std::vector<DeltaRankColumn> cols;
    auto block = [&cols](const std::string& tag, std::vector<double> acc,
                         std::vector<int> acc_r, std::vector<double> wall,
                         std::vector<int> wall_r, std::vector<double> comm,
                         std::vector<int> comm_r, std::vector<double> energy,
                         std::vector<int> energy_r, std::vector<double> mem,
                         std::vector<int> mem_r) {
        cols.push_back({tag + "/acc", std::move(acc), std::move(acc_r)});
        cols.push_back({tag + "/wall", std::move(wall), std::move(wall_r)});
        cols.push_back({tag + "/comm", std::move(comm), std::move(comm_r)});
        cols.push_back({tag + "/energy", std::move(energy), std::move(energy_r)});
        cols.push_back({tag + "/mem", std::move(mem), std::move(mem_r)});
    };
    // bandwidth fluctuation (the two 0.02 wall deltas differ at full precision)
    block("fluct", {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {0.024, 0.020, 0.0, 4.46}, {3, 2, 1, 4},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {1.78, 2.08, 8.47, 203.62}, {1, 2, 3, 4},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1});
    // dropout sweeps
    block("drop@10", {-0.14, -0.12, -0.05, -0.08}, {4, 3, 1, 2},
          {26.84, 26.85, 22.36, 0.52}, {3, 4, 2, 1},
          {412.50, 412.50, 206.25, 0.0}, {3, 3, 2, 1},
          {1299.76, 1300.06, 1082.90, 25.27}, {3, 4, 2, 1},
          {-0.75, -0.11, -0.57, 0.58}, {4, 1, 2, 3});
    block("drop@30", {-0.02, -0.03, -0.09, -0.10}, {1, 2, 3, 4},
          {79.69, 79.75, 74.48, 2.01}, {3, 4, 2, 1},
          {412.50, 412.50, 206.25, 0.0}, {3, 3, 2, 1},
          {3858.73, 3861.83, 3606.40, 97.45}, {3, 4, 2, 1},
          {-0.83, 1.50, 0.88, 1.50}, {1, 3, 2, 3});
    block("drop@50", {-0.38, -0.11, -0.12, -0.33}, {4, 1, 2, 3},
          {131.35, 113.31, 168.28, 2.87}, {3, 2, 4, 1},
          {-660.00, -1113.75, 206.25, -1608.75}, {2, 3, 1, 4},
          {6360.54, 5486.74, 8148.70, 138.84}, {3, 2, 4, 1},
          {1.50, 1.50, 1.50, 1.50}, {1, 1, 1, 1});
    // device-mix sweeps
    block("mix/100J", {0.0, 0.0, 0.17, 0.0}, {1, 1, 2, 1},
          {-136.51, -136.49, -78.07, 0.04}, {4, 3, 2, 1},
          {0.0, 0.0, -1608.75, 0.0}, {1, 1, 2, 1},
          {-6609.90, -6608.81, -3780.15, 1.78}, {4, 3, 2, 1},
          {0.60, 0.50, 0.40, 0.40}, {3, 2, 1, 1});
    block("mix/70J20I10P", {0.0, 0.0, 0.08, 0.0}, {1, 1, 2, 1},
          {-103.88, -108.07, -58.17, 0.03}, {3, 4, 2, 1},
          {0.0, 0.0, 1155.00, 0.0}, {1, 1, 2, 1},
          {-5029.87, -5232.63, -2816.80, 1.25}, {3, 4, 2, 1},
          {0.30, 0.25, 0.20, 0.20}, {3, 2, 1, 1});
    block("mix/reference", {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1});
    block("mix/10J20I20P20M30N", {0.0, 0.0, -0.27, 0.0}, {1, 1, 2, 1},
          {9.65, 4.81, 3.62, 0.04}, {4, 3, 2, 1},
          {0.0, 0.0, -165.00, 0.0}, {1, 1, 2, 1},
          {467.14, 232.73, 175.37, 1.85}, {4, 3, 2, 1},
          {-0.30, -0.25, -0.20, -0.20}, {3, 2, 1, 1});
    block("mix/10I10P30M50N", {0.0, 0.0, -0.35, 0.0}, {1, 1, 2, 1},
          {12.47, 6.79, 4.98, 0.05}, {4, 3, 2, 1},
          {0.0, 0.0, -742.50, 0.0}, {1, 1, 2, 1},
          {603.56, 328.87, 241.30, 2.36}, {4, 3, 2, 1},
          {-0.60, -0.50, -0.40, -0.40}, {3, 2, 1, 1});
    // full-sweep fluctuation tables (method order: split, hetero, fedavg, fedprox)
    block("fluct/boolq", {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {2.50, 59.12, 70.00, 70.42}, {1, 2, 3, 4},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {112.97, 2671.55, 3163.24, 3182.07}, {1, 2, 3, 4},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1});
    block("fluct/qnli", {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {2.50, 114.73, 93.75, 116.50}, {1, 3, 2, 4},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {116.43, 5343.39, 4366.28, 5425.68}, {1, 3, 2, 4},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1});
    block("fluct/piqa", {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {0.42, 44.49, 38.75, 25.68}, {1, 4, 3, 2},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {19.33, 2063.96, 1797.67, 1191.49}, {1, 4, 3, 2},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1});
    block("fluct/hellaswag", {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {3.33, 114.17, 112.92, 112.92}, {1, 3, 2, 2},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {162.00, 5548.47, 5487.72, 5487.72}, {1, 3, 2, 2},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1});
    block("fluct/socialiqa", {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {2.08, 115.80, 114.17, 113.33}, {1, 4, 3, 2},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {101.89, 5663.76, 5583.64, 5542.88}, {1, 4, 3, 2},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1});
    block("fluct/arce", {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {1.52, 82.50, 65.00, 64.58}, {1, 4, 3, 2},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {73.81, 3994.92, 3147.51, 3127.34}, {1, 4, 3, 2},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1});
    block("fluct/winogrande", {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {0.83, 104.17, 93.33, 111.18}, {1, 3, 2, 4},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1},
          {42.15, 5269.37, 4721.35, 5623.93}, {1, 3, 2, 4},
          {0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1});
    return cols;
}

}  // namespace fixtures
