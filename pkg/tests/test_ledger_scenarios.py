"""Golden replay tests for the bundled worked-example scenarios.

Every cell of both step-by-step balance tables is frozen here; a change
in any posting template shows up as a cell-level diff.
"""

import json

import pytest

from circuitforge.ledger import BadScenario, LedgerError, replay_scenario
from circuitforge.money import Money

COIN_PAPER_SCENARIO = "src/circuitforge/data/scenarios/coin_paper_loan.json"
DEPOSIT_SCENARIO = "src/circuitforge/data/scenarios/deposit_loan.json"

COIN_PAPER_HEADER = [
    "step", "bank_capital", "bank_suspense", "bank_issued_paper",
    "bank_income", "bank_equity", "coin_debtor", "paper_debtor", "debt_debtor",
]
COIN_PAPER_ROWS = [
    ["bank endowment", "100.00", "0.00", "0.00", "0.00", "100.00", "0.00", "0.00", "0.00"],
    ["borrower endowment", "100.00", "0.00", "0.00", "0.00", "100.00", "10.00", "0.00", "0.00"],
    ["originate", "90.00", "100.00", "90.00", "0.00", "100.00", "20.00", "90.00", "100.00"],
    ["accrue 30 days", "90.00", "100.38", "90.00", "0.38", "100.00", "20.00", "90.00", "100.00"],
    ["interest paid", "90.38", "100.00", "90.00", "0.38", "100.00", "19.62", "90.00", "100.00"],
    ["principal repaid", "190.38", "0.00", "0.00", "100.38", "90.00", "9.62", "0.00", "0.00"],
]

DEPOSIT_HEADER = [
    "step", "bank_capital", "bank_suspense", "bank_deposit_reserve",
    "deposits_debtor", "bank_income", "bank_equity", "deposit_claim_debtor",
    "debt_debtor",
]
DEPOSIT_ROWS = [
    ["bank endowment", "100.00", "0.00", "0.00", "0.00", "0.00", "100.00", "0.00", "0.00"],
    ["prior deposit", "100.00", "0.00", "10.00", "10.00", "0.00", "100.00", "10.00", "0.00"],
    ["originate", "100.00", "100.00", "10.00", "110.00", "0.00", "100.00", "110.00", "100.00"],
    ["accrue 30 days", "100.00", "100.38", "10.00", "110.00", "0.38", "100.00", "110.00", "100.00"],
    ["interest settled in coin", "100.38", "100.00", "9.62", "109.62", "0.38", "100.00", "109.62", "100.00"],
    ["principal repaid", "200.38", "0.00", "9.62", "9.62", "100.38", "100.00", "9.62", "0.00"],
]


class TestCoinAndPaperGolden:
    def test_every_cell_matches(self):
        header, rows = replay_scenario(COIN_PAPER_SCENARIO).table()
        assert header == COIN_PAPER_HEADER
        assert rows == COIN_PAPER_ROWS

    def test_bank_gain_nets_interest_plus_principal_minus_coin_outlay(self):
        result = replay_scenario(COIN_PAPER_SCENARIO)
        assert result.final("bank_capital") == Money.of("190.38")
        assert result.final("bank_income") == Money.of("100.38")

    def test_residual_circulating_coin(self):
        result = replay_scenario(COIN_PAPER_SCENARIO)
        assert result.final("coin_debtor") == Money.of("9.62")
        assert result.ledger.money_supply() == Money.of("9.62")

    def test_identity_holds_at_the_end(self):
        result = replay_scenario(COIN_PAPER_SCENARIO)
        for sector, gap in result.ledger.identity_gaps().items():
            assert gap.is_zero(), f"{sector}: {gap}"


class TestDepositGolden:
    def test_every_cell_matches(self):
        header, rows = replay_scenario(DEPOSIT_SCENARIO).table()
        assert header == DEPOSIT_HEADER
        assert rows == DEPOSIT_ROWS

    def test_bank_ends_with_principal_plus_interest(self):
        result = replay_scenario(DEPOSIT_SCENARIO)
        assert result.final("bank_capital") == Money.of("200.38")
        assert result.final("bank_income") == Money.of("100.38")

    def test_depositor_money_survives_as_deposits(self):
        result = replay_scenario(DEPOSIT_SCENARIO)
        assert result.final("deposits_debtor") == Money.of("9.62")
        assert result.final("deposit_claim_debtor") == Money.of("9.62")
        assert result.ledger.money_supply() == Money.of("9.62")

    def test_identity_holds_at_the_end(self):
        result = replay_scenario(DEPOSIT_SCENARIO)
        for sector, gap in result.ledger.identity_gaps().items():
            assert gap.is_zero(), f"{sector}: {gap}"


class TestScenarioValidation:
    def base(self) -> dict:
        return {
            "name": "t", "currency": "F",
            "accounts": [
                {"id": "a", "kind": "asset", "sector": "bank"},
                {"id": "b", "kind": "equity", "sector": "bank"},
            ],
            "steps": [],
        }

    def test_missing_account_fields_rejected(self):
        scenario = self.base()
        scenario["accounts"].append({"id": "orphan"})
        with pytest.raises(BadScenario):
            replay_scenario(scenario)

    def test_missing_loan_fields_rejected(self):
        scenario = self.base()
        scenario["steps"] = [{"op": "originate", "loan": {"id": "L1"}}]
        with pytest.raises(BadScenario):
            replay_scenario(scenario)

    def test_float_amounts_rejected(self):
        scenario = self.base()
        scenario["steps"] = [{"op": "post", "postings": [
            {"account": "a", "side": "debit", "amount": 10.0},
            {"account": "b", "side": "credit", "amount": 10.0},
        ]}]
        with pytest.raises(BadScenario):
            replay_scenario(scenario)

    def test_unknown_op_rejected(self):
        scenario = self.base()
        scenario["steps"] = [{"op": "teleport"}]
        with pytest.raises(BadScenario):
            replay_scenario(scenario)

    def test_failing_step_is_named_in_the_error(self):
        scenario = self.base()
        scenario["steps"] = [
            {"op": "post", "label": "fine", "postings": [
                {"account": "a", "side": "debit", "amount": "5.00"},
                {"account": "b", "side": "credit", "amount": "5.00"},
            ]},
            {"op": "post", "label": "tilted", "postings": [
                {"account": "a", "side": "debit", "amount": "5.00"},
                {"account": "b", "side": "credit", "amount": "4.00"},
            ]},
        ]
        with pytest.raises(LedgerError, match=r"step 2 \(tilted\)"):
            replay_scenario(scenario)

    def test_unlabeled_failing_step_falls_back_to_op(self):
        scenario = self.base()
        scenario["steps"] = [{"op": "post", "postings": [
            {"account": "a", "side": "debit", "amount": "5.00"},
            {"account": "b", "side": "credit", "amount": "4.00"},
        ]}]
        with pytest.raises(LedgerError, match=r"step 1 \(post\)"):
            replay_scenario(scenario)
