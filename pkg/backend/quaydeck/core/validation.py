"""
Instance Validator - checks a ship row plan against a dockyard arrangement
"""

from collections import Counter
from typing import Dict, List
import logging

from quaydeck.core.models import ShipRowPlan, Violation, YardState, iter_slots

logger = logging.getLogger(__name__)


class InstanceValidator:
    """
    Validates (plan, yard) pairs.
    Violations are returned as data, never raised.
    """

    def __init__(self, plan: ShipRowPlan):
        """
        Initialize validator with the ship row plan.

        Args:
            plan: ShipRowPlan the yard must serve
        """
        self.plan = plan

    def check_plan(self) -> List[Violation]:
        """Ship-side invariants: stack heights and tag numbering."""
        violations = []
        seen: Dict = {}

        if not self.plan.stacks:
            violations.append(Violation('empty-plan', 'ship row', 'plan has no ship stacks'))

        for c, stack in enumerate(self.plan.stacks, start=1):
            where = f"ship stack {c}"
            if stack.stay + stack.unload > self.plan.max_height:
                violations.append(Violation(
                    'ship-height', where,
                    f"stay {stack.stay} + unload {stack.unload} exceeds max height {self.plan.max_height}"
                ))
            if stack.stay + len(stack.load) > self.plan.max_height:
                violations.append(Violation(
                    'ship-height', where,
                    f"stay {stack.stay} + load {len(stack.load)} exceeds max height {self.plan.max_height}"
                ))
            for position, tag in enumerate(stack.load, start=1):
                if tag.ship_stack != c:
                    violations.append(Violation(
                        'tag-stack-mismatch', where, f"tag {tag} belongs to stack {tag.ship_stack}"
                    ))
                elif tag.tier_label != position:
                    violations.append(Violation(
                        'tag-order', where, f"tag {tag} listed at loading position {position}"
                    ))
                if tag in seen:
                    violations.append(Violation(
                        'duplicate-tag', where, f"tag {tag} already planned for stack {seen[tag]}"
                    ))
                else:
                    seen[tag] = c

        return violations

    def check_yard(self, yard: YardState) -> List[Violation]:
        """Yard-side invariants: height cap and tag multiset."""
        violations = []

        for i, height in enumerate(yard.heights):
            if height > yard.cap:
                violations.append(Violation(
                    'height-cap', f"yard stack {i}", f"height {height} exceeds cap {yard.cap}"
                ))

        planned = Counter(self.plan.load_tags())
        stored = Counter(slot for _, _, slot in iter_slots(yard) if slot is not None)

        for tag, count in stored.items():
            if tag not in planned:
                violations.append(Violation('unknown-tag', f"yard tag {tag}", "not in any load list"))
            elif count > 1:
                violations.append(Violation('duplicate-tag', f"yard tag {tag}", f"stored {count} times"))

        for tag in planned:
            if tag not in stored:
                violations.append(Violation('missing-tag', f"plan tag {tag}", "not stored in the yard"))

        return violations

    def validate(self, yard: YardState) -> List[Violation]:
        """
        Run every check.

        Returns:
            List of violations; empty when the instance is valid
        """
        violations = self.check_plan() + self.check_yard(yard)
        if violations:
            logger.debug(f"Instance has {len(violations)} violation(s)")
        return violations


def validate_instance(plan: ShipRowPlan, yard: YardState) -> List[Violation]:
    return InstanceValidator(plan).validate(yard)
