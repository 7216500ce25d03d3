package app;

import java.util.concurrent.TimeUnit;

import org.junit.Test;

import static org.junit.Assert.assertEquals;

public class DelayedTest {
    @Test
    public void waitsForBackgroundRefresh() throws InterruptedException {
        Thread.sleep(150);
        int expected = 1;
        int observed = 1;
        assertEquals(expected, observed);
    }

    @Test
    public void waitsThroughScheduler() throws InterruptedException {
        TimeUnit.MILLISECONDS.sleep(150);
        int expected = 1;
        int observed = 1;
        assertEquals(expected, observed);
    }

    @Test
    public void pollsWithoutBlocking() {
        int expected = 1;
        int observed = 1;
        assertEquals(expected, observed);
    }
}
