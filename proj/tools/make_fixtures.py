#!/usr/bin/env python3
# Copyright 2026 The Mevscope Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates data/registry/seed.json and the JSON fixtures under data/fixtures."""

import json
import pathlib

from Crypto.Hash import keccak

ROOT = pathlib.Path(__file__).resolve().parent.parent


def keccak256(data: bytes) -> bytes:
    h = keccak.new(digest_bits=256)
    h.update(data)
    return h.digest()


def topic(declaration: str) -> str:
    return "0x" + keccak256(declaration.encode()).hex()


SEED = [
    ("Swap(address,uint256,uint256,uint256,uint256,address)", "Swap", "Uniswap V2 pair"),
    ("Swap(address,address,int256,int256,uint160,uint128,int24)", "Swap", "Uniswap V3 pool"),
    ("TokenExchange(address,int128,uint256,int128,uint256)", "Swap", "Curve plain pool"),
    ("Swap(bytes32,address,address,uint256,uint256)", "Swap", "Balancer V2 vault"),
    ("Mint(address,uint256,uint256)", "AddLiquidity", "Uniswap V2 pair"),
    ("Mint(address,address,int24,int24,uint128,uint256,uint256)", "AddLiquidity", "Uniswap V3 pool"),
    ("AddLiquidity(address,uint256[2],uint256[2],uint256,uint256)", "AddLiquidity", "Curve 2-coin pool"),
    ("Burn(address,uint256,uint256,address)", "RemoveLiquidity", "Uniswap V2 pair"),
    ("Collect(address,address,int24,int24,uint128,uint128)", "RemoveLiquidity", "Uniswap V3 pool"),
    ("RemoveLiquidity(address,uint256[2],uint256[2],uint256)", "RemoveLiquidity", "Curve 2-coin pool"),
    ("Borrow(address,address,address,uint256,uint256,uint256,uint16)", "Borrowing", "Aave V2 lending pool"),
    ("Borrow(address,uint256,uint256,uint256)", "Borrowing", "Compound cToken"),
    ("FlashLoan(address,address,address,uint256,uint256,uint16)", "Leverage", "Aave V2 lending pool"),
    ("FlashLoan(address,address,address,uint256,uint8,uint256,uint16)", "Leverage", "Aave V3 pool"),
    ("LiquidationCall(address,address,address,uint256,uint256,address,bool)", "Liquidation", "Aave V2 lending pool"),
    ("LiquidateBorrow(address,address,uint256,address,uint256)", "Liquidation", "Compound cToken"),
    ("Claimed(uint256,address,uint256)", "Airdrop", "Uniswap merkle distributor"),
    ("Claimed(address,uint256)", "Airdrop", "ENS token claim"),
    ("LogRebase(uint256,uint256)", "Rebasing", "Ampleforth UFragments"),
    ("Rebase(uint256,uint256)", "Rebasing", "Rebase token (epoch, totalSupply)"),
]


def write_json(path: pathlib.Path, doc) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n")


def make_registry() -> None:
    entries = [
        {"signature_hash": topic(event), "event": event, "action": action, "source": source}
        for event, action, source in SEED
    ]
    write_json(ROOT / "data" / "registry" / "seed.json", entries)


# Well-known mainnet contracts used by the fixtures.
HEX = "0x2b591e99afe9f32eaa6214f7b7629768c40eeb39"
USDC = "0xa0b86991c6218b36c1d19d4a2e9eb0ce3606eb48"
WETH = "0xc02aaa39b223fe8d0a0e5c4f27ead9083c756cc2"
HEX_USDC_POOL = "0x69d91b94f0aaf8e8a2586909fa77a5c2c89818d5"

ERC20_SELECTORS = [0x18160DDD, 0x70A08231, 0xA9059CBB, 0x23B872DD, 0x095EA7B3, 0xDD62ED3E]
ERC721_SELECTORS = [0x70A08231, 0x6352211E, 0x42842E0E, 0xB88D4FDE, 0x081812FC, 0xA22CB465, 0xE985E9C5]
POOL_SELECTORS = [0x022C0D9F, 0x0902F1AC]


def bytecode(selectors) -> str:
    """Dispatcher-shaped stub: DUP1 PUSH4 <selector> EQ per entry."""
    code = bytes([0x60, 0x80, 0x60, 0x40, 0x52])
    for sel in selectors:
        code += bytes([0x80, 0x63]) + sel.to_bytes(4, "big") + bytes([0x14])
    return "0x" + (code + bytes([0x00])).hex()


def word(value: int) -> str:
    return "0x" + (value % (1 << 256)).to_bytes(32, "big").hex()


def addr_word(address: str) -> str:
    return "0x" + "00" * 12 + address[2:]


def data(*words: str) -> str:
    return "0x" + "".join(w[2:] for w in words)


def tx_hash(label: str) -> str:
    return "0x" + keccak256(label.encode()).hex()


TRANSFER = topic("Transfer(address,address,uint256)")


class Trace:
    def __init__(self, label, sender, to, value=0, gas_used=150000, gas_price=30 * 10**9):
        self.doc = {
            "tx_hash": tx_hash(label),
            "from": sender,
            "to": to,
            "value": str(value),
            "gas_used": gas_used,
            "effective_gas_price": str(gas_price),
            "records": [],
            "code": {},
        }

    def _code(self, address, selectors):
        self.doc["code"].setdefault(address, bytecode(selectors))

    def transfer(self, token, src, dst, amount, selectors=ERC20_SELECTORS):
        self._code(token, selectors)
        return self.log(token, [TRANSFER, addr_word(src), addr_word(dst)], [word(amount)])

    def log(self, emitter, topics, words, selectors=POOL_SELECTORS):
        self._code(emitter, selectors)
        self.doc["records"].append(
            {"type": "log", "emitter": emitter, "topics": topics, "data": data(*words),
             "index": len(self.doc["records"])})
        return self

    def call(self, caller, callee, value):
        self.doc["records"].append(
            {"type": "call", "caller": caller, "callee": callee, "value": str(value),
             "index": len(self.doc["records"])})
        return self


FIXTURES = ROOT / "data" / "fixtures"


def make_hex_swap() -> None:
    trader = "0x5c6ae9b5cbdbe3b2b4a2cb0b31a67bc5e2e9c6c4"
    router = "0xdef1c0ded9bec7f1a1670819833240f027b25eff"
    hex_amount = 500_187 * 10**8  # HEX has 8 decimals
    usdc_amount = 14_082_220_000  # 14,082.22 USDC, 6 decimals
    univ3_swap = topic("Swap(address,address,int256,int256,uint160,uint128,int24)")
    t = Trace("hex swap", trader, router)
    t.transfer(HEX, trader, router, hex_amount)                      # 1
    t.transfer(USDC, HEX_USDC_POOL, router, usdc_amount)             # 2
    t.transfer(HEX, router, HEX_USDC_POOL, hex_amount)               # 3
    t.log(HEX_USDC_POOL, [univ3_swap, addr_word(router), addr_word(router)],
          [word(hex_amount), word(-usdc_amount), word(1325206287417611029446), word(3370384201158), word(-276324)])  # 4
    t.transfer(USDC, router, trader, usdc_amount)                    # 5
    write_json(FIXTURES / "hex_swap_trace.json", t.doc)


TRACES = FIXTURES / "traces"
BUNDLES = FIXTURES / "bundles"
ETHERMINE = "0xea674fdde714fd979de3edf0f56aa9716b898ec8"
GWEI = 10**9
ETH = 10**18

UNIV2_SWAP = topic("Swap(address,uint256,uint256,uint256,uint256,address)")
UNIV2_MINT = topic("Mint(address,uint256,uint256)")
UNIV2_BURN = topic("Burn(address,uint256,uint256,address)")
LOG_REBASE = topic("LogRebase(uint256,uint256)")
ERC721_TRANSFER_SELECTORS = ERC721_SELECTORS


def synthetic(label: str, prefix: str = "") -> str:
    """Deterministic placeholder address; `prefix` pins the leading hex digits."""
    prefix = prefix.removeprefix("0x")
    digest = keccak256(label.encode()).hex()[:40]
    return "0x" + prefix + digest[len(prefix):]


def swap_v2(t: Trace, pool, trader, token_in, amount_in, token_out, amount_out) -> Trace:
    t.transfer(token_in, trader, pool, amount_in)
    t.transfer(token_out, pool, trader, amount_out)
    if token_in < token_out:
        amounts = [amount_in, 0, 0, amount_out]
    else:
        amounts = [0, amount_in, amount_out, 0]
    return t.log(pool, [UNIV2_SWAP, addr_word(trader), addr_word(trader)], [word(a) for a in amounts])


def ordered(token_a, amount_a, token_b, amount_b):
    return [amount_a, amount_b] if token_a < token_b else [amount_b, amount_a]


def mint_v2(t: Trace, pool, provider, token_a, amount_a, token_b, amount_b) -> Trace:
    t.transfer(token_a, provider, pool, amount_a)
    t.transfer(token_b, provider, pool, amount_b)
    return t.log(pool, [UNIV2_MINT, addr_word(provider)], [word(a) for a in ordered(token_a, amount_a, token_b, amount_b)])


def burn_v2(t: Trace, pool, provider, token_a, amount_a, token_b, amount_b) -> Trace:
    t.transfer(token_a, pool, provider, amount_a)
    t.transfer(token_b, pool, provider, amount_b)
    return t.log(pool, [UNIV2_BURN, addr_word(provider), addr_word(provider)],
                 [word(a) for a in ordered(token_a, amount_a, token_b, amount_b)])


def write_bundle(name: str, block: int, index: int, traces, coinbase=ETHERMINE) -> None:
    txs = []
    for t in traces:
        write_json(TRACES / (t.doc["tx_hash"] + ".json"), t.doc)
        txs.append({"hash": t.doc["tx_hash"], "gas_used": t.doc["gas_used"],
                    "effective_gas_price": t.doc["effective_gas_price"]})
    write_json(BUNDLES / (name + ".json"),
               {"block_number": block, "coinbase": coinbase, "bundles": [{"bundle_index": index, "txs": txs}]})


def make_rebasing_backrun() -> None:
    ram = synthetic("RAM", "0x2b")
    pool = synthetic("RAM-WETH pool", "395c")
    rebaser = synthetic("RAM orchestrator")
    trader = synthetic("rebasing trader1")
    supply = 1_000_000 * ETH
    ram_gain = 2_262_515 * 10**16  # 22,625.15 RAM
    eth_out = 4_261 * 10**16  # 42.61 ETH
    t1 = Trace("rebasing-rebase", rebaser, ram)
    t1.log(ram, [LOG_REBASE, word(152)], [word(supply)], selectors=ERC20_SELECTORS)
    t2 = Trace("rebasing-backrun", trader, pool)
    t2.transfer(ram, pool, trader, ram_gain)
    swap_v2(t2, pool, trader, ram, ram_gain, WETH, eth_out)
    write_bundle("rebasing_backrun", 12_147_015, 0, [t1, t2])


def make_mba() -> None:
    f9 = synthetic("F9", "0xf9")
    pool = synthetic("WETH-F9 pool", "459e")
    attacker = synthetic("mba arbitrageur")
    front_in, front_out = 10 * ETH, 4_000_000 * ETH
    back_out = front_in + 116 * 10**16  # 1.16 ETH profit
    t = [swap_v2(Trace("mba-front", attacker, pool), pool, attacker, WETH, front_in, f9, front_out)]
    for i in range(4):
        victim = synthetic(f"mba victim {i}")
        t.append(swap_v2(Trace(f"mba-victim-{i}", victim, pool), pool, victim, WETH, (i + 1) * ETH,
                         f9, (i + 1) * 390_000 * ETH - i * 7 * ETH))
    t.append(swap_v2(Trace("mba-back", attacker, pool), pool, attacker, f9, front_out, WETH, back_out))
    write_bundle("mba", 12_753_463, 0, t)


def make_fa() -> None:
    xyo = synthetic("XYO", "0x55")
    pool_a = synthetic("XYO-WETH pool a", "a986")
    pool_d = synthetic("XYO-WETH pool d", "d78a")
    trader1 = synthetic("fa trader1")
    trader2 = synthetic("fa trader2")
    t1 = swap_v2(Trace("fa-1", trader1, pool_a), pool_a, trader1, xyo, 9_000_000 * ETH, WETH, 41 * ETH)
    xyo_bought = 8_700_000 * ETH
    t2 = Trace("fa-2", trader2, synthetic("fa trader2 contract"))
    swap_v2(t2, pool_a, trader2, WETH, 3_206 * 10**16, xyo, xyo_bought)
    swap_v2(t2, pool_d, trader2, xyo, xyo_bought, WETH, 98 * 10**17)
    write_bundle("fa", 12_516_458, 1, [t1, t2])


def make_sandwich() -> None:
    dai = synthetic("DAI-like", "0x6b")
    pool = synthetic("WETH-DAI pool")
    attacker = synthetic("sandwich attacker")
    victim = synthetic("sandwich victim")
    t1 = swap_v2(Trace("sa-front", attacker, pool), pool, attacker, WETH, 5 * ETH, dai, 9_900 * ETH)
    t2 = swap_v2(Trace("sa-victim", victim, pool), pool, victim, WETH, 20 * ETH, dai, 38_500 * ETH)
    t3 = swap_v2(Trace("sa-back", attacker, pool), pool, attacker, dai, 9_900 * ETH, WETH, 5_300 * 10**15)
    write_bundle("sandwich", 15_000_000, 0, [t1, t2, t3])


def make_cyclic() -> None:
    tok_b = synthetic("cycle token B", "0x1b")
    tok_c = synthetic("cycle token C", "0x1c")
    pools = [synthetic(f"cycle pool {i}") for i in range(3)]
    trader = synthetic("cycle arbitrageur")
    t = Trace("ca-1", trader, synthetic("cycle arbitrageur contract"))
    swap_v2(t, pools[0], trader, WETH, 2 * ETH, tok_b, 7_000 * ETH)
    swap_v2(t, pools[1], trader, tok_b, 7_000 * ETH, tok_c, 1_234 * ETH)
    swap_v2(t, pools[2], trader, tok_c, 1_234 * ETH, WETH, 2_050 * 10**15)
    write_bundle("cyclic", 15_000_001, 0, [t])


def make_lsa() -> None:
    pool = synthetic("USDC-WETH pool", "8ad5")
    provider = synthetic("lsa provider")
    victim = synthetic("lsa victim")
    t1 = mint_v2(Trace("lsa-add", provider, pool), pool, provider, USDC, 5_000_000 * 10**6, WETH, 2_000 * ETH)
    t2 = swap_v2(Trace("lsa-victim", victim, pool), pool, victim, USDC, 3_000_000 * 10**6, WETH, 1_150 * ETH)
    t3 = burn_v2(Trace("lsa-remove", provider, pool), pool, provider, USDC, 6_400_000 * 10**6, WETH, 1_470 * ETH)
    write_bundle("lsa", 12_702_238, 0, [t1, t2, t3])


def make_lt() -> None:
    pendle = synthetic("PENDLE", "0x80")
    pool = synthetic("PENDLE-WETH pool", "3792")
    trader = synthetic("lt trader")
    t = Trace("lt-1", trader, synthetic("lt router"))
    swap_v2(t, pool, trader, pendle, 1_000 * ETH, WETH, 3 * ETH)
    mint_v2(t, pool, trader, pendle, 900 * ETH, WETH, 2_700 * 10**15)
    write_bundle("lt", 13_521_679, 1, [t])


def make_nr() -> None:
    nft = synthetic("reforge NFT")
    holder = synthetic("nr holder")
    zero = "0x" + "00" * 20
    t = Trace("nr-1", holder, nft)
    t._code(nft, ERC721_TRANSFER_SELECTORS)
    t.log(nft, [TRANSFER, addr_word(holder), addr_word(zero), word(7)], [], selectors=ERC721_SELECTORS)
    t.log(nft, [TRANSFER, addr_word(zero), addr_word(holder), word(7)], [], selectors=ERC721_SELECTORS)
    write_bundle("nr", 14_000_000, 0, [t])


def make_revenue() -> None:
    searcher = synthetic("revenue searcher")
    t = Trace("revenue-1", searcher, synthetic("revenue contract"), gas_used=21_000, gas_price=100 * GWEI)
    t.call(synthetic("revenue contract"), ETHERMINE, ETH)
    write_bundle("revenue", 15_100_000, 0, [t])


def make_flashbots_replay() -> None:
    """Recorded blocks-API pages for 12,147,013..12,147,015 with limit 2."""
    out = FIXTURES / "flashbots_replay"

    def tx(label, bundle_index, tx_index):
        return {"transaction_hash": tx_hash(label), "tx_index": tx_index, "bundle_index": bundle_index,
                "bundle_type": "flashbots", "eoa_address": synthetic(label + " eoa"),
                "to_address": synthetic(label + " to"), "gas_used": 120_000 + tx_index,
                "gas_price": str(40 * GWEI + tx_index), "coinbase_transfer": "0", "total_miner_reward": "0"}

    def block(number, txs):
        return {"block_number": number, "miner": ETHERMINE, "miner_reward": "0", "gas_used": 0, "transactions": txs}

    pages = {
        12_147_016: [block(12_147_015, [tx("fb-15-b1", 1, 3), tx("fb-15-a", 0, 0), tx("fb-15-b0", 1, 2)]),
                     block(12_147_014, [tx("fb-14-a", 0, 0)])],
        12_147_014: [block(12_147_013, [tx("fb-13-a", 0, 1)]), block(12_147_012, [tx("fb-12-a", 0, 0)])],
    }
    for before, blocks in pages.items():
        target = f"/v1/blocks?before={before}&limit=2"
        name = "GET-" + keccak256(f"GET {target}\n".encode()).hex()[:16] + ".json"
        write_json(out / name, {"blocks": blocks, "latest_block_number": 12_147_015})


def main() -> None:
    make_registry()
    make_hex_swap()
    make_rebasing_backrun()
    make_mba()
    make_fa()
    make_sandwich()
    make_cyclic()
    make_lsa()
    make_lt()
    make_nr()
    make_revenue()
    make_flashbots_replay()


if __name__ == "__main__":
    main()
