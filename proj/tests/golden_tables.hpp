#pragma once
// Reference instruction tables used as byte-for-byte goldens.
namespace golden {

// bb18, no routing.
inline const char* bb18_regular =
    "phase: 1|1|2|2|2|3|3\n"
    "X: A1|A2|B1|B2|B3|A3|-\n"
    "Z: -|A3|B1|B2|B3|A2|A1\n";

// bb18, louvre-7.
inline const char* bb18_l7 =
    "phase: 1|1|2|2|2|3|3\n"
    "X: A1|A2|B2|B3|B1:CXSWAP|A3|-\n"
    "Z: -|A3|B2|B3|B1:CXSWAP|A2|A1\n";

// bb18, louvre-8.
inline const char* bb18_l8 =
    "phase: 1|1|2|2|2|2|3|3\n"
    "X: A2|A1|B2|A1:SWAP|B3|B1:CXSWAP|A1:SWAP|A3\n"
    "Z: -|A3|B3|A1:SWAP|B2|B1:CXSWAP|A1:CXSWAP|A2\n";

// lacross72, louvre-7 with full coupler reuse (the optimizer's l7r target).
inline const char* lacross72_l7r =
    "phase: 1|1|2|2|2|3|3\n"
    "X: A3|A2:CXSWAP|B1|B2:CXSWAP|B3|A1|-\n"
    "Z: -|A1|B1|B2:CXSWAP|B3|A2:CXSWAP|A3\n"
    "init: X:A2\n";

// bb72, a pipelined eight-layer schedule with reused couplers.
inline const char* bb72_l8r =
    "phase: 1|1|2|2|2|2|2|3|3\n"
    "X: A3|A2:CXSWAP|B1|B2:CXSWAP|B3|A2:SWAP|-|A2:SWAP|A1\n"
    "Z: -|A1|B1|B2:CXSWAP|-|A2:SWAP|B3|A2|A3\n"
    "init: X:A2\n";

// lacross72 with every interaction emitted as CXSWAP.
inline const char* lacross72_cxswap =
    "phase: 1|1|2|2|2|2|2|2|3|3\n"
    "X: A3:CXSWAP|A2:CXSWAP|B1:CXSWAP|B2:CXSWAP|A2:SWAP|B3:CXSWAP|A2:SWAP|-|A1:CXSWAP|-\n"
    "Z: -|A1:CXSWAP|B1:CXSWAP|-|A2:SWAP|B2:CXSWAP|A2:SWAP|B3:CXSWAP|A2:CXSWAP|A3:CXSWAP\n"
    "init: X:A2,X:A3,Z:A1\n";

}  // namespace golden
