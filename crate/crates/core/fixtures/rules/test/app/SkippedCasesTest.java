package app;

import org.junit.Ignore;
import org.junit.Test;

import static org.junit.Assert.assertEquals;

public class SkippedCasesTest {
    @Ignore("pending fix for the downstream service")
    @Test
    public void brokenScenario() {
        int expected = 2;
        assertEquals(expected, 1 + 1);
    }

    @Test
    public void activeScenario() {
        int expected = 2;
        assertEquals(expected, 1 + 1);
    }
}
