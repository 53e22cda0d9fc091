#pragma once

// Hand-transcribed states of the worked example (construction I, three work
// qubits, rounds [W S] and [S W]). `rounds` is how many gate rounds the work
// register has seen at that step.

#include <cstdint>
#include <string>
#include <vector>

namespace golden {

struct Frame {
    std::uint64_t t;
    std::string rows;
    int rounds;
};

inline const std::string data_row = "D: 1 0 0 0 1 ? ? ? 1 0 0 0 1 0\n";

inline const std::vector<Frame>& worked_example() {
    static const std::vector<Frame> frames{
        {0, "P: → S W I I W S I • • • • • •\n" + data_row, 0},
        {8, "P: • S W I I W S I → • • • • •\n" + data_row, 0},
        {9, "P: • S W I I W S I gat • • • • •\n" + data_row, 0},
        {12, "P: • S W I I gat W S I • • • • •\n" + data_row, 1},
        {16, "P: • gat S W I I W S I • • • • •\n" + data_row, 1},
        {17, "P: • → S W I I W S I • • • • •\n" + data_row, 1},
        {34, "P: • • → S W I I W S I • • • •\n" + data_row, 1},
        {51, "P: • • • → S W I I W S I • • •\n" + data_row, 1},
        {68, "P: • • • • → S W I I W S I • •\n" + data_row, 1},
        {85, "P: • • • • • → S W I I W S I •\n" + data_row, 2},
        {93, "P: • • • • • • S W I I W S I →\n" + data_row, 2},
    };
    return frames;
}

inline const std::string worked_instance = R"(construction=I
n=3
k=2
round 1: W S
round 2: S W
work=100
)";

// Start tables of the larger constructions for the same circuit.
inline const std::string start_tier2 =
    "P: turn → S W I I W S I • • • • • • turn\n"
    "D: 0 1 0 0 0 1 ? ? ? 1 0 0 0 1 0 0\n";

inline const std::string start_tier3 =
    "P: turn • • • • • • S W I I W S I turn turn\n"
    "D: 0 1 0 0 0 1 ? ? ? 1 0 0 0 1 0 0\n"
    "C: • 0 1 1 1 1 1 1 1 1 1 1 1 1 1 1\n"
    "CP: • R • • • • • • • • • • • • • •\n";

inline const std::string start_tier4 =
    "P: turn • • • • • • S W I I W S I ← turn\n"
    "D: 0 1 0 0 0 1 ? ? ? 1 0 0 0 1 0 0\n"
    "C: • 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
    "CP: • • • • • • • • • • • • • • • X\n"
    "T: • • • • • • • • • • • • 0 0 1 1\n"
    "C2: • 0 1 1 1 1 1 1 1 1 1 1 1 1 1 1\n";

} // namespace golden
