package app;

import org.junit.Test;

import static org.junit.Assert.assertEquals;

public class LedgerTest {
    @Test
    public void startsWithZeroBalance() {
        Ledger ledger = new Ledger();
        int observed = ledger.balance();
        int expected = 0;
        assertEquals(expected, observed);
    }

    @Test
    public void keepsBalanceWhenIdle() {
        Ledger ledger = new Ledger();
        int observed = ledger.balance();
        int expected = 0;
        assertEquals(expected, observed);
    }
}
